use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};

/// A simplex as its sorted vertex list.
pub type Simplex = Vec<u32>;

/// Finite abstract simplicial complex, stored with all faces (closed downward).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    faces: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Downward closure of the given faces.
    pub fn from_faces<I, F>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = F>,
        F: AsRef<[u32]>,
    {
        let mut all = BTreeSet::new();
        for f in faces {
            let mut s: Simplex = f.as_ref().to_vec();
            s.sort_unstable();
            let n = s.len();
            s.dedup();
            if s.len() != n {
                return Err(Error::InvalidPairsData(format!("face {:?} repeats a vertex", f.as_ref())));
            }
            if s.is_empty() {
                continue;
            }
            if s.len() > 20 {
                return Err(Error::InvalidPairsData("faces of dimension above 19 are not supported".into()));
            }
            for mask in 1u32..(1 << s.len()) {
                let sub: Simplex = s.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &v)| v).collect();
                all.insert(sub);
            }
        }
        Ok(Self { faces: all })
    }

    /// Full simplex on `0..=n`.
    pub fn simplex(n: u32) -> Self {
        Self::from_faces([(0..=n).collect::<Vec<_>>()]).expect("valid simplex")
    }

    /// Boundary of the simplex on `0..=n`.
    pub fn simplex_boundary(n: u32) -> Self {
        let faces: Vec<Vec<u32>> = (0..=n).map(|skip| (0..=n).filter(|&v| v != skip).collect()).collect();
        Self::from_faces(faces).expect("valid boundary")
    }

    pub fn contains(&self, face: &[u32]) -> bool {
        self.faces.contains(face)
    }

    pub fn faces(&self) -> impl Iterator<Item = &Simplex> {
        self.faces.iter()
    }

    /// Faces of dimension `k` in lexicographic order.
    pub fn faces_of_dim(&self, k: usize) -> Vec<Simplex> {
        self.faces.iter().filter(|f| f.len() == k + 1).cloned().collect()
    }

    pub fn vertices(&self) -> Vec<u32> {
        self.faces.iter().filter(|f| f.len() == 1).map(|f| f[0]).collect()
    }

    pub fn dim(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    pub fn is_subcomplex_of(&self, other: &Self) -> bool {
        self.faces.is_subset(&other.faces)
    }

    /// Maximal faces, sorted.
    pub fn maximal_faces(&self) -> Vec<Simplex> {
        self.faces
            .iter()
            .filter(|f| {
                !self
                    .faces
                    .iter()
                    .any(|g| g.len() > f.len() && f.iter().all(|v| g.binary_search(v).is_ok()))
            })
            .cloned()
            .collect()
    }
}

/// A pair `(X, Y)` with `Y` a subcomplex of `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPair {
    pub name: String,
    space: SimplicialComplex,
    sub: SimplicialComplex,
}

impl SimplicialPair {
    pub fn new(name: impl Into<String>, space: SimplicialComplex, sub: SimplicialComplex) -> Result<Self> {
        let name = name.into();
        if !sub.is_subcomplex_of(&space) {
            return Err(Error::InvalidPairsData(format!("pair `{name}`: subcomplex is not contained in the space")));
        }
        Ok(Self { name, space, sub })
    }

    pub fn absolute(name: impl Into<String>, space: SimplicialComplex) -> Self {
        Self {
            name: name.into(),
            space,
            sub: SimplicialComplex::empty(),
        }
    }

    pub fn space(&self) -> &SimplicialComplex {
        &self.space
    }

    pub fn sub(&self) -> &SimplicialComplex {
        &self.sub
    }

    /// Basis of the relative chain group in degree `k`: faces of `X` not in `Y`.
    pub fn relative_faces(&self, k: usize) -> Vec<Simplex> {
        self.space.faces_of_dim(k).into_iter().filter(|f| !self.sub.contains(f)).collect()
    }
}

/// A simplicial map of pairs given by a vertex assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialMap {
    pub name: String,
    pub source: usize,
    pub target: usize,
    pub vertex_map: BTreeMap<u32, u32>,
}

impl SimplicialMap {
    pub fn apply(&self, face: &[u32]) -> Vec<u32> {
        face.iter().map(|v| self.vertex_map[v]).collect()
    }
}

/// A triple `Z ⊆ Y ⊆ X` given by the pairs `(X, Y)` and `(Y, Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub name: String,
    pub outer: usize,
    pub inner: usize,
}

/// Pairs, maps of pairs and triples: the input of the diagram construction.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PairsCategoryData {
    pairs: Vec<SimplicialPair>,
    maps: Vec<SimplicialMap>,
    triples: Vec<Triple>,
}

impl PairsCategoryData {
    pub fn new(pairs: Vec<SimplicialPair>, maps: Vec<SimplicialMap>, triples: Vec<Triple>) -> Result<Self> {
        let mut d = Self::default();
        for p in pairs {
            d.add_pair(p)?;
        }
        for m in maps {
            d.add_map(m)?;
        }
        for t in triples {
            d.add_triple(t)?;
        }
        Ok(d)
    }

    pub fn pairs(&self) -> &[SimplicialPair] {
        &self.pairs
    }

    pub fn maps(&self) -> &[SimplicialMap] {
        &self.maps
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    pub fn pair_index(&self, name: &str) -> Result<usize> {
        self.pairs
            .iter()
            .position(|p| p.name == name)
            .ok_or_else(|| Error::InvalidPairsData(format!("unknown pair `{name}`")))
    }

    fn check_fresh(&self, name: &str) -> Result<()> {
        let used = self.pairs.iter().map(|p| &p.name).chain(self.maps.iter().map(|m| &m.name)).chain(self.triples.iter().map(|t| &t.name));
        for n in used {
            if n == name {
                return Err(Error::InvalidPairsData(format!("duplicate name `{name}`")));
            }
        }
        Ok(())
    }

    pub fn add_pair(&mut self, p: SimplicialPair) -> Result<usize> {
        self.check_fresh(&p.name)?;
        self.pairs.push(p);
        Ok(self.pairs.len() - 1)
    }

    /// Adds a map after checking that faces go to faces and subcomplex into subcomplex.
    pub fn add_map(&mut self, m: SimplicialMap) -> Result<usize> {
        self.check_fresh(&m.name)?;
        let (s, t) = match (self.pairs.get(m.source), self.pairs.get(m.target)) {
            (Some(s), Some(t)) => (s, t),
            _ => return Err(Error::InvalidPairsData(format!("map `{}` refers to a missing pair", m.name))),
        };
        for v in s.space.vertices() {
            if !m.vertex_map.contains_key(&v) {
                return Err(Error::InvalidPairsData(format!("map `{}` does not assign vertex {v}", m.name)));
            }
        }
        let image = |f: &[u32]| {
            let mut g = m.apply(f);
            g.sort_unstable();
            g.dedup();
            g
        };
        for f in s.space.faces() {
            if !t.space.contains(&image(f)) {
                return Err(Error::InvalidPairsData(format!("map `{}` sends face {f:?} to a non-face", m.name)));
            }
        }
        for f in s.sub.faces() {
            if !t.sub.contains(&image(f)) {
                return Err(Error::InvalidPairsData(format!(
                    "map `{}` does not send the subcomplex into the subcomplex (face {f:?})",
                    m.name
                )));
            }
        }
        self.maps.push(m);
        Ok(self.maps.len() - 1)
    }

    pub fn add_triple(&mut self, t: Triple) -> Result<usize> {
        self.check_fresh(&t.name)?;
        let (o, i) = match (self.pairs.get(t.outer), self.pairs.get(t.inner)) {
            (Some(o), Some(i)) => (o, i),
            _ => return Err(Error::InvalidPairsData(format!("triple `{}` refers to a missing pair", t.name))),
        };
        if o.sub != i.space {
            return Err(Error::InvalidPairsData(format!(
                "triple `{}`: subcomplex of `{}` differs from the space of `{}`",
                t.name, o.name, i.name
            )));
        }
        self.triples.push(t);
        Ok(self.triples.len() - 1)
    }

    /// Identity-on-vertices map between two pairs, if present.
    pub fn find_inclusion(&self, source: usize, target: usize) -> Option<usize> {
        self.maps.iter().position(|m| {
            m.source == source && m.target == target && m.vertex_map.iter().all(|(a, b)| a == b)
        })
    }

    /// The pair `(X, Z)` of a triple, if present.
    pub fn total_pair(&self, triple: usize) -> Option<usize> {
        let t = &self.triples[triple];
        let (x, z) = (&self.pairs[t.outer].space, &self.pairs[t.inner].sub);
        self.pairs.iter().position(|p| &p.space == x && &p.sub == z)
    }

    /// Adds, for every triple, the pair `(X, Z)` and the inclusions
    /// `(Y, Z) -> (X, Z) -> (X, Y)` when they are missing.
    pub fn close_triples(&mut self) -> Result<()> {
        for ti in 0..self.triples.len() {
            let t = self.triples[ti].clone();
            let total = match self.total_pair(ti) {
                Some(p) => p,
                None => {
                    let space = self.pairs[t.outer].space.clone();
                    let sub = self.pairs[t.inner].sub.clone();
                    let name = self.fresh(&format!("{}_total", t.name));
                    self.add_pair(SimplicialPair::new(name, space, sub)?)?
                }
            };
            for (s, d) in [(t.inner, total), (total, t.outer)] {
                if self.find_inclusion(s, d).is_none() {
                    let vertex_map = self.pairs[s].space.vertices().into_iter().map(|v| (v, v)).collect();
                    let name = self.fresh(&format!("{}_{}_{}", t.name, self.pairs[s].name, self.pairs[d].name));
                    self.add_map(SimplicialMap {
                        name,
                        source: s,
                        target: d,
                        vertex_map,
                    })?;
                }
            }
        }
        Ok(())
    }

    fn fresh(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut i = 1;
        while self.check_fresh(&name).is_err() {
            name = format!("{base}{i}");
            i += 1;
        }
        name
    }
}
