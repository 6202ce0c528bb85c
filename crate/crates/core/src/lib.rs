//! Exact computation in free abelian categories over quivers.
//!
//! Layers, bottom up: [`linalg`] (exact matrices over Q, F_p and Z, Smith form,
//! subgroups and quotients), [`quiver`] (paths, the path algebra, typed
//! matrices), [`repr`] (representations), [`fpmod`] (finitely presented
//! modules and free realizations), [`pp`] (pp formulas and pairs), [`freyd`]
//! (objects, morphisms, Serre-kernel oracles) and [`nori`] (pairs of
//! simplicial complexes, the diagram and its homology representation).
//! [`formats`] reads and writes the text formats used by the CLI.

pub mod error;
pub mod formats;
pub mod fpmod;
pub mod freyd;
pub mod linalg;
pub mod nori;
pub mod pp;
pub mod quiver;
pub mod random;
pub mod repr;

pub use error::{Error, Result};
