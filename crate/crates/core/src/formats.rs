//! YAML text formats for quivers, representations, pairs, morphisms and
//! pairs-category data, with canonical dumps that parse back to equal values.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Deserialize;
use serde_yaml::Value;

use crate::error::{Error, Result};
use crate::linalg::{parse_scalar, ConcreteMatrix, PresentedGroup, Scalar, ScalarRing};
use crate::nori::{PairsCategoryData, SimplicialComplex, SimplicialMap, SimplicialPair, Triple};
use crate::pp::{parse_formula, PpFormula, PpPair};
use crate::quiver::Quiver;
use crate::repr::Representation;

fn yaml_error(e: serde_yaml::Error) -> Error {
    match e.location() {
        Some(loc) => Error::Parse {
            line: loc.line(),
            column: loc.column(),
            message: e.to_string(),
        },
        None => Error::Format(e.to_string()),
    }
}

fn from_yaml<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_yaml::from_str(text).map_err(yaml_error)
}

/// Scalars and names may be written as YAML numbers or strings.
fn scalar_text(v: &Value) -> Result<String> {
    match v {
        Value::Number(n) => Ok(n.to_string()),
        Value::String(s) => Ok(s.clone()),
        other => Err(Error::Format(format!("expected a scalar, found {other:?}"))),
    }
}

fn parse_matrix(ring: ScalarRing, cols: usize, rows: &[Vec<Value>]) -> Result<ConcreteMatrix> {
    let rows: Vec<Vec<Scalar>> = rows
        .iter()
        .map(|r| r.iter().map(|x| parse_scalar(ring, &scalar_text(x)?)).collect::<Result<_>>())
        .collect::<Result<_>>()?;
    ConcreteMatrix::from_rows(ring, cols, rows)
}

/// Plain YAML scalar when safe, quoted otherwise.
fn yaml_name(s: &str) -> String {
    let plain = s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
        && s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && !matches!(s, "true" | "false" | "null" | "yes" | "no" | "on" | "off" | "y" | "n");
    if plain {
        s.to_string()
    } else {
        format!("{s:?}")
    }
}

fn matrix_text(m: &ConcreteMatrix) -> String {
    let rows: Vec<String> = m
        .to_string_rows()
        .into_iter()
        .map(|r| {
            let cells: Vec<String> = r.into_iter().map(|x| if x.contains('/') { format!("\"{x}\"") } else { x }).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

// ---------------------------------------------------------------- quivers

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuiverDoc {
    vertices: Vec<Value>,
    #[serde(default)]
    arrows: Vec<ArrowDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowDoc {
    name: Value,
    src: Value,
    tgt: Value,
}

impl QuiverDoc {
    fn build(&self) -> Result<Quiver> {
        let vertices: Vec<String> = self.vertices.iter().map(scalar_text).collect::<Result<_>>()?;
        let arrows: Vec<(String, String, String)> = self
            .arrows
            .iter()
            .map(|a| Ok((scalar_text(&a.name)?, scalar_text(&a.src)?, scalar_text(&a.tgt)?)))
            .collect::<Result<_>>()?;
        Quiver::new(&vertices, &arrows)
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    from_yaml::<QuiverDoc>(text)?.build()
}

fn quiver_lines(q: &Quiver, indent: &str) -> String {
    let mut s = String::new();
    let vs: Vec<String> = q.vertex_names().iter().map(|v| yaml_name(v)).collect();
    writeln!(s, "{indent}vertices: [{}]", vs.join(", ")).unwrap();
    if q.num_arrows() == 0 {
        writeln!(s, "{indent}arrows: []").unwrap();
    } else {
        writeln!(s, "{indent}arrows:").unwrap();
        for a in q.arrows() {
            writeln!(
                s,
                "{indent}  - {{name: {}, src: {}, tgt: {}}}",
                yaml_name(&a.name),
                yaml_name(q.vertex_name(a.src)),
                yaml_name(q.vertex_name(a.tgt))
            )
            .unwrap();
        }
    }
    s
}

pub fn dump_quiver(q: &Quiver) -> String {
    quiver_lines(q, "")
}

// ---------------------------------------------------------- representations

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDoc {
    #[serde(default)]
    ring: Option<String>,
    #[serde(default)]
    quiver: Option<QuiverDoc>,
    #[serde(default)]
    fibers: BTreeMap<String, FiberDoc>,
    #[serde(default)]
    arrows: BTreeMap<String, ArrowMatrixDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FiberDoc {
    #[serde(default)]
    dim: Option<usize>,
    #[serde(default)]
    presentation: Vec<Vec<Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ArrowMatrixDoc {
    matrix: Vec<Vec<Value>>,
}

/// Resolve the ring of a file against a requested ring; the default is `Q`.
fn resolve_ring(in_file: Option<&str>, requested: Option<ScalarRing>) -> Result<ScalarRing> {
    let file = in_file.map(str::parse::<ScalarRing>).transpose()?;
    match (file, requested) {
        (Some(a), Some(b)) if a != b => Err(Error::RingMismatch(a.to_string(), b.to_string())),
        (Some(a), _) => Ok(a),
        (None, Some(b)) => Ok(b),
        (None, None) => Ok(ScalarRing::Rationals),
    }
}

/// Parse a representation. The quiver comes from the file or from `quiver`
/// (both must agree when given). Missing fibers are zero; missing arrow
/// matrices are zero matrices.
pub fn parse_representation(text: &str, quiver: Option<&Arc<Quiver>>, ring: Option<ScalarRing>) -> Result<Representation> {
    // YAML keys such as `1:` arrive as numbers; normalise them to strings first
    let raw: Value = from_yaml(text)?;
    let raw = stringify_keys(raw);
    let doc: RepDoc = serde_yaml::from_value(raw).map_err(yaml_error)?;
    let ring = resolve_ring(doc.ring.as_deref(), ring)?;
    let q = match (&doc.quiver, quiver) {
        (Some(d), Some(given)) => {
            let q = d.build()?;
            if q != **given {
                return Err(Error::TypeMismatch("representation file declares a different quiver".into()));
            }
            given.clone()
        }
        (Some(d), None) => Arc::new(d.build()?),
        (None, Some(given)) => given.clone(),
        (None, None) => return Err(Error::Format("representation needs a quiver".into())),
    };
    let mut fibers = vec![PresentedGroup::free(ring, 0); q.num_vertices()];
    for (name, f) in &doc.fibers {
        let v = q.vertex(name)?;
        let n = match (f.dim, f.presentation.first()) {
            (Some(n), _) => n,
            (None, Some(row)) => row.len(),
            (None, None) => return Err(Error::Format(format!("fiber `{name}` needs `dim` or `presentation`"))),
        };
        let rel = parse_matrix(ring, n, &f.presentation)?;
        fibers[v.0] = PresentedGroup::new(ring, n, rel)?;
    }
    let mut arrows: Vec<Option<ConcreteMatrix>> = vec![None; q.num_arrows()];
    for (name, a) in &doc.arrows {
        let id = q.arrow_by_name(name)?;
        let ar = q.arrow(id);
        let cols = fibers[ar.src.0].gens();
        let m = parse_matrix(ring, cols, &a.matrix)?;
        arrows[id.0] = Some(m);
    }
    let arrows = arrows
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.unwrap_or_else(|| {
                let ar = q.arrow(crate::quiver::ArrowId(i));
                ConcreteMatrix::zeros(ring, fibers[ar.tgt.0].gens(), fibers[ar.src.0].gens())
            })
        })
        .collect();
    Representation::new(q, ring, fibers, arrows)
}

fn stringify_keys(v: Value) -> Value {
    match v {
        Value::Mapping(m) => Value::Mapping(
            m.into_iter()
                .map(|(k, v)| {
                    let k = match k {
                        Value::Number(n) => Value::String(n.to_string()),
                        Value::Bool(b) => Value::String(b.to_string()),
                        other => other,
                    };
                    (k, stringify_keys(v))
                })
                .collect(),
        ),
        Value::Sequence(s) => Value::Sequence(s.into_iter().map(stringify_keys).collect()),
        other => other,
    }
}

pub fn dump_representation(t: &Representation) -> String {
    let q = t.quiver();
    let mut s = String::new();
    writeln!(s, "ring: {}", yaml_name(&t.ring().to_string())).unwrap();
    writeln!(s, "quiver:").unwrap();
    s.push_str(&quiver_lines(q, "  "));
    writeln!(s, "fibers:").unwrap();
    for v in q.vertex_ids() {
        let f = t.fiber(v);
        write!(s, "  {}: {{dim: {}", yaml_name(q.vertex_name(v)), f.gens()).unwrap();
        if f.relations().rows() > 0 {
            write!(s, ", presentation: {}", matrix_text(f.relations())).unwrap();
        }
        writeln!(s, "}}").unwrap();
    }
    if q.num_arrows() == 0 {
        writeln!(s, "arrows: {{}}").unwrap();
    } else {
        writeln!(s, "arrows:").unwrap();
        for a in q.arrow_ids() {
            writeln!(s, "  {}: {{matrix: {}}}", yaml_name(&q.arrow(a).name), matrix_text(t.arrow_matrix(a))).unwrap();
        }
    }
    s
}

// ---------------------------------------------------------------- pairs

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairDoc {
    top: String,
    bottom: String,
}

/// Positions inside an embedded formula are reported relative to the formula text.
fn formula_in(q: &Arc<Quiver>, ring: ScalarRing, what: &str, text: &str) -> Result<PpFormula> {
    parse_formula(q, ring, text).map_err(|e| match e {
        Error::Parse { line, column, message } => Error::Parse {
            line,
            column,
            message: format!("in {what}: {message}"),
        },
        other => other,
    })
}

pub fn parse_pair(text: &str, quiver: &Arc<Quiver>, ring: ScalarRing) -> Result<PpPair> {
    let doc: PairDoc = from_yaml(text)?;
    PpPair::new(
        formula_in(quiver, ring, "top", &doc.top)?,
        formula_in(quiver, ring, "bottom", &doc.bottom)?,
    )
}

pub fn dump_pair(p: &PpPair) -> String {
    format!("top: {:?}\nbottom: {:?}\n", p.top().to_string(), p.bottom().to_string())
}

/// A morphism file: the two pairs and the graph formula on the joint context.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub source: PpPair,
    pub target: PpPair,
    pub theta: PpFormula,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    source: PairDoc,
    target: PairDoc,
    theta: String,
}

pub fn parse_morphism(text: &str, quiver: &Arc<Quiver>, ring: ScalarRing) -> Result<MorphismSpec> {
    let doc: MorphismDoc = from_yaml(text)?;
    let pair = |p: &PairDoc, what: &str| -> Result<PpPair> {
        PpPair::new(
            formula_in(quiver, ring, &format!("{what} top"), &p.top)?,
            formula_in(quiver, ring, &format!("{what} bottom"), &p.bottom)?,
        )
    };
    Ok(MorphismSpec {
        source: pair(&doc.source, "source")?,
        target: pair(&doc.target, "target")?,
        theta: formula_in(quiver, ring, "theta", &doc.theta)?,
    })
}

pub fn dump_morphism(m: &MorphismSpec) -> String {
    let pair = |p: &PpPair| format!("  top: {:?}\n  bottom: {:?}\n", p.top().to_string(), p.bottom().to_string());
    format!(
        "source:\n{}target:\n{}theta: {:?}\n",
        pair(&m.source),
        pair(&m.target),
        m.theta.to_string()
    )
}

// ------------------------------------------------------- pairs-category data

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairsDoc {
    complexes: BTreeMap<String, Vec<Vec<u32>>>,
    pairs: Vec<PairsPairDoc>,
    #[serde(default)]
    maps: Vec<PairsMapDoc>,
    #[serde(default)]
    triples: Vec<PairsTripleDoc>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairsPairDoc {
    name: String,
    space: String,
    #[serde(default)]
    sub: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairsMapDoc {
    name: String,
    source: String,
    target: String,
    #[serde(default)]
    vertices: Option<BTreeMap<u32, u32>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairsTripleDoc {
    name: String,
    outer: String,
    inner: String,
}

/// Parse pairs-category data: named complexes by faces, pairs by complex
/// names (`sub` defaults to empty), maps by vertex assignment (identity when
/// omitted) and triples by pair names.
pub fn parse_pairs_data(text: &str) -> Result<PairsCategoryData> {
    let doc: PairsDoc = from_yaml(text)?;
    let mut complexes = BTreeMap::new();
    for (name, faces) in &doc.complexes {
        complexes.insert(name.clone(), SimplicialComplex::from_faces(faces)?);
    }
    let complex = |n: &str| {
        complexes
            .get(n)
            .cloned()
            .ok_or_else(|| Error::InvalidPairsData(format!("unknown complex `{n}`")))
    };
    let mut data = PairsCategoryData::default();
    for p in &doc.pairs {
        let sub = match &p.sub {
            Some(s) => complex(s)?,
            None => SimplicialComplex::empty(),
        };
        data.add_pair(SimplicialPair::new(p.name.clone(), complex(&p.space)?, sub)?)?;
    }
    for m in &doc.maps {
        let source = data.pair_index(&m.source)?;
        let target = data.pair_index(&m.target)?;
        let vertex_map = match &m.vertices {
            Some(v) => v.clone(),
            None => data.pairs()[source].space().vertices().into_iter().map(|v| (v, v)).collect(),
        };
        data.add_map(SimplicialMap {
            name: m.name.clone(),
            source,
            target,
            vertex_map,
        })?;
    }
    for t in &doc.triples {
        let outer = data.pair_index(&t.outer)?;
        let inner = data.pair_index(&t.inner)?;
        data.add_triple(Triple {
            name: t.name.clone(),
            outer,
            inner,
        })?;
    }
    Ok(data)
}

pub fn dump_pairs_data(data: &PairsCategoryData) -> String {
    let mut names: Vec<(SimplicialComplex, String)> = Vec::new();
    let mut name_of = |c: &SimplicialComplex| -> String {
        if let Some((_, n)) = names.iter().find(|(d, _)| d == c) {
            return n.clone();
        }
        let n = format!("c{}", names.len());
        names.push((c.clone(), n.clone()));
        n
    };
    let mut pairs = String::new();
    for p in data.pairs() {
        let space = name_of(p.space());
        if p.sub().faces().next().is_none() {
            writeln!(pairs, "  - {{name: {}, space: {space}}}", yaml_name(&p.name)).unwrap();
        } else {
            let sub = name_of(p.sub());
            writeln!(pairs, "  - {{name: {}, space: {space}, sub: {sub}}}", yaml_name(&p.name)).unwrap();
        }
    }
    let mut s = String::from("complexes:\n");
    for (c, n) in &names {
        let faces: Vec<String> = c
            .maximal_faces()
            .iter()
            .map(|f| format!("[{}]", f.iter().map(u32::to_string).collect::<Vec<_>>().join(", ")))
            .collect();
        writeln!(s, "  {n}: [{}]", faces.join(", ")).unwrap();
    }
    s.push_str("pairs:\n");
    s.push_str(&pairs);
    let pname = |i: usize| yaml_name(&data.pairs()[i].name);
    if data.maps().is_empty() {
        s.push_str("maps: []\n");
    } else {
        s.push_str("maps:\n");
        for m in data.maps() {
            let vs: Vec<String> = m.vertex_map.iter().map(|(a, b)| format!("{a}: {b}")).collect();
            writeln!(
                s,
                "  - {{name: {}, source: {}, target: {}, vertices: {{{}}}}}",
                yaml_name(&m.name),
                pname(m.source),
                pname(m.target),
                vs.join(", ")
            )
            .unwrap();
        }
    }
    if data.triples().is_empty() {
        s.push_str("triples: []\n");
    } else {
        s.push_str("triples:\n");
        for t in data.triples() {
            writeln!(
                s,
                "  - {{name: {}, outer: {}, inner: {}}}",
                yaml_name(&t.name),
                pname(t.outer),
                pname(t.inner)
            )
            .unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nori::fixtures::disc_data;

    const A2: &str = "vertices: [1, 2]\narrows:\n  - {name: a, src: 1, tgt: 2}\n";

    #[test]
    fn quiver_round_trip() {
        let q = parse_quiver(A2).unwrap();
        assert_eq!(q.num_arrows(), 1);
        assert_eq!(parse_quiver(&dump_quiver(&q)).unwrap(), q);
    }

    #[test]
    fn quiver_errors_have_positions() {
        match parse_quiver("vertices: [1, 2\narrows: []") {
            Err(Error::Parse { line, .. }) => assert!(line >= 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_quiver("vertices: [1]\narrows: [{name: a, src: 1, tgt: 3}]"), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn representation_round_trip() {
        let text = "ring: Z\nquiver:\n  vertices: [1, 2]\n  arrows: [{name: a, src: 1, tgt: 2}]\nfibers:\n  1: {dim: 1}\n  2: {dim: 2, presentation: [[2, 0]]}\narrows:\n  a: {matrix: [[1], [3]]}\n";
        let t = parse_representation(text, None, None).unwrap();
        assert_eq!(t.ring(), ScalarRing::Integers);
        assert_eq!(t.fiber(crate::quiver::VertexId(1)).invariants().torsion, vec![2.into()]);
        let again = parse_representation(&dump_representation(&t), None, None).unwrap();
        assert_eq!(again, t);
        assert!(matches!(
            parse_representation(text, None, Some(ScalarRing::Rationals)),
            Err(Error::RingMismatch(..))
        ));
    }

    #[test]
    fn rational_entries_round_trip() {
        let q = Arc::new(parse_quiver(A2).unwrap());
        let text = "fibers:\n  1: {dim: 1}\n  2: {dim: 1}\narrows:\n  a: {matrix: [[\"1/2\"]]}\n";
        let t = parse_representation(text, Some(&q), None).unwrap();
        assert_eq!(parse_representation(&dump_representation(&t), Some(&q), None).unwrap(), t);
    }

    #[test]
    fn pair_and_morphism_round_trip() {
        let q = Arc::new(parse_quiver(A2).unwrap());
        let r = ScalarRing::Rationals;
        let p = parse_pair("top: \"x:2 | x = x\"\nbottom: \"x:2 | EX y:1 . a*y = x\"\n", &q, r).unwrap();
        assert_eq!(parse_pair(&dump_pair(&p), &q, r).unwrap(), p);
        let m = parse_morphism(
            "source: {top: \"x:1 | x = x\", bottom: \"x:1 | x = 0\"}\ntarget: {top: \"x:2 | x = x\", bottom: \"x:2 | x = 0\"}\ntheta: \"x:1, y:2 | a*x = y\"\n",
            &q,
            r,
        )
        .unwrap();
        assert_eq!(parse_morphism(&dump_morphism(&m), &q, r).unwrap(), m);
    }

    #[test]
    fn pairs_data_round_trip() {
        let d = disc_data();
        let text = dump_pairs_data(&d);
        assert_eq!(parse_pairs_data(&text).unwrap(), d);
        assert!(matches!(
            parse_pairs_data("complexes: {a: [[0, 1]]}\npairs: [{name: p, space: b}]\n"),
            Err(Error::InvalidPairsData(_))
        ));
    }
}
