//! Loading of input files and the engine calls behind each command.

use std::sync::Arc;

use freyd_core::formats::{
    dump_morphism, dump_pair, dump_pairs_data, dump_quiver, dump_representation, parse_morphism, parse_pair,
    parse_pairs_data, parse_quiver, parse_representation, MorphismSpec,
};
use freyd_core::fpmod::{hom_invariants, FpModule};
use freyd_core::freyd::{
    check_sequents, same_regular_theory_bounded, AbMorphism, AbObject, Mode, SerreKernelOracle, TheoryVerdict,
};
use freyd_core::linalg::ScalarRing;
use freyd_core::nori::{build_nori_diagram, check_les_exactness, homology_representation, ArrowKind, PairsCategoryData};
use freyd_core::pp::{parse_formula, PpFormula, PpPair};
use freyd_core::quiver::Quiver;
use freyd_core::repr::Representation;
use freyd_core::Error;
use serde_json::{json, Value};

use crate::report::{invariants_text, Report};
use crate::Opts;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{}", engine_message(file.as_deref(), error))]
    Engine { file: Option<String>, error: Error },
    #[error("{file}: {message}")]
    Io { file: String, message: String },
    #[error("{0}")]
    Usage(String),
}

fn engine_message(file: Option<&str>, error: &Error) -> String {
    match (file, error) {
        (Some(file), Error::Parse { line, column, message }) => format!("{file}:{line}:{column}: {message}"),
        (Some(file), error) => format!("{file}: {error}"),
        (None, error) => error.to_string(),
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Engine { error, .. } if error.is_parse() => 2,
            CliError::Engine { .. } | CliError::Io { .. } => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(error: Error) -> Self {
        CliError::Engine { file: None, error }
    }
}

fn in_file<T>(file: &str, r: Result<T, Error>) -> Result<T, CliError> {
    r.map_err(|error| CliError::Engine {
        file: Some(file.to_string()),
        error,
    })
}

fn read(file: &str) -> Result<String, CliError> {
    std::fs::read_to_string(file).map_err(|e| CliError::Io {
        file: file.to_string(),
        message: e.to_string(),
    })
}

type Named<T> = Vec<(String, T)>;

pub struct Session {
    quiver: Option<(String, Arc<Quiver>)>,
    ring: ScalarRing,
    reps: Named<Representation>,
    formulas: Named<PpFormula>,
    pairs: Named<PpPair>,
    morphisms: Named<MorphismSpec>,
    axioms: Named<PpPair>,
    pairs_data: Option<(String, PairsCategoryData)>,
    budget: usize,
    dmax: usize,
    triple: Option<String>,
}

fn need<'a, T>(items: &'a Named<T>, n: usize, flag: &str) -> Result<&'a [(String, T)], CliError> {
    if items.len() != n {
        return Err(CliError::Usage(format!(
            "expected {n} `--{flag}` argument{}, got {}",
            if n == 1 { "" } else { "s" },
            items.len()
        )));
    }
    Ok(items)
}

fn pair_json(p: &PpPair) -> Value {
    json!({ "top": p.top().to_string(), "bottom": p.bottom().to_string() })
}

impl Session {
    pub fn load(opts: &Opts, nori: bool) -> Result<Self, CliError> {
        let requested = opts
            .ring
            .as_deref()
            .map(|r| r.parse::<ScalarRing>())
            .transpose()
            .map_err(|error| CliError::Engine {
                file: Some("--ring".into()),
                error,
            })?;
        let mut s = Session {
            quiver: None,
            ring: requested.unwrap_or(ScalarRing::Rationals),
            reps: Vec::new(),
            formulas: Vec::new(),
            pairs: Vec::new(),
            morphisms: Vec::new(),
            axioms: Vec::new(),
            pairs_data: None,
            budget: opts.budget,
            dmax: opts.dmax,
            triple: opts.triple.clone(),
        };
        if nori {
            let file = opts
                .pairs
                .as_ref()
                .ok_or_else(|| CliError::Usage("this command needs `--pairs FILE`".into()))?;
            let data = in_file(file, parse_pairs_data(&read(file)?))?;
            s.pairs_data = Some((file.clone(), data));
            return Ok(s);
        }
        if let Some(file) = &opts.quiver {
            let q = in_file(file, parse_quiver(&read(file)?))?;
            s.quiver = Some((file.clone(), Arc::new(q)));
        }
        let mut ring = requested;
        for file in &opts.rep {
            let quiver = s.quiver.as_ref().map(|(_, q)| q);
            let t = in_file(file, parse_representation(&read(file)?, quiver, ring))?;
            if s.quiver.is_none() {
                s.quiver = Some((file.clone(), t.quiver().clone()));
            }
            ring = Some(t.ring());
            s.reps.push((file.clone(), t));
        }
        if let Some(r) = ring {
            s.ring = r;
        }
        let needs_quiver = !(opts.formula.is_empty() && opts.pair.is_empty() && opts.morphism.is_empty() && opts.axiom.is_empty());
        if needs_quiver && s.quiver.is_none() {
            return Err(CliError::Usage("formulas need `--quiver FILE` or a representation".into()));
        }
        if let Some((_, q)) = s.quiver.clone() {
            for file in &opts.formula {
                let f = in_file(file, parse_formula(&q, s.ring, read(file)?.trim_end()))?;
                s.formulas.push((file.clone(), f));
            }
            for file in &opts.pair {
                s.pairs.push((file.clone(), in_file(file, parse_pair(&read(file)?, &q, s.ring))?));
            }
            for file in &opts.axiom {
                s.axioms.push((file.clone(), in_file(file, parse_pair(&read(file)?, &q, s.ring))?));
            }
            for file in &opts.morphism {
                s.morphisms.push((file.clone(), in_file(file, parse_morphism(&read(file)?, &q, s.ring))?));
            }
        }
        Ok(s)
    }

    /// Canonical text of every loaded input, as `### kind source` sections.
    pub fn dump(&self, with_homology: bool) -> Result<String, CliError> {
        let mut out = String::new();
        let mut section = |kind: &str, src: &str, body: String| {
            out.push_str(&format!("### {kind} {src}\n{body}"));
            if !body.ends_with('\n') {
                out.push('\n');
            }
        };
        if let Some((src, q)) = &self.quiver {
            section("quiver", src, dump_quiver(q));
        }
        for (src, t) in &self.reps {
            section("rep", src, dump_representation(t));
        }
        for (src, f) in &self.formulas {
            section("formula", src, format!("{f}\n"));
        }
        for (src, p) in self.pairs.iter().chain(&self.axioms) {
            section("pair", src, dump_pair(p));
        }
        for (src, m) in &self.morphisms {
            section("morphism", src, dump_morphism(m));
        }
        if let Some((src, d)) = &self.pairs_data {
            section("pairs", src, dump_pairs_data(d));
            if with_homology {
                let diagram = build_nori_diagram(d, self.dmax)?;
                let t = homology_representation(d, &diagram, self.ring)?;
                section("rep", "homology", dump_representation(&t));
            }
        }
        Ok(out)
    }

    fn one_rep(&self) -> Result<&(String, Representation), CliError> {
        Ok(&need(&self.reps, 1, "rep")?[0])
    }

    fn one_pair(&self) -> Result<&(String, PpPair), CliError> {
        Ok(&need(&self.pairs, 1, "pair")?[0])
    }

    pub fn eval(&self, r: &mut Report) -> Result<(), CliError> {
        let (_, f) = &need(&self.formulas, 1, "formula")?[0];
        let (src, t) = self.one_rep()?;
        let sol = f.evaluate(t)?;
        r.text("formula", f);
        r.text("rep", src);
        r.invariants(&sol.invariants(), t.ring());
        r.matrix("generators", sol.generators());
        Ok(())
    }

    pub fn pair_value(&self, r: &mut Report) -> Result<(), CliError> {
        let (_, p) = self.one_pair()?;
        let (src, t) = self.one_rep()?;
        let q = p.quotient_coords(t)?;
        r.text("pair", p);
        r.text("rep", src);
        r.invariants(&q.invariants(), t.ring());
        Ok(())
    }

    pub fn closed(&self, r: &mut Report) -> Result<(), CliError> {
        let (_, p) = self.one_pair()?;
        let (src, t) = self.one_rep()?;
        r.text("pair", p);
        r.text("rep", src);
        r.verdict("closed", p.is_closed(t)?);
        Ok(())
    }

    pub fn implies_all(&self, r: &mut Report) -> Result<(), CliError> {
        let fs = need(&self.formulas, 2, "formula")?;
        let (a, b) = (&fs[0].1, &fs[1].1);
        r.text("premise", a);
        r.text("conclusion", b);
        r.verdict("implies", a.implies_all(b)?);
        Ok(())
    }

    pub fn hom(&self, r: &mut Report) -> Result<(), CliError> {
        let ts = need(&self.reps, 2, "rep")?;
        let a = FpModule::from_representation(&ts[0].1)?;
        let b = FpModule::from_representation(&ts[1].1)?;
        r.text("source", &ts[0].0);
        r.text("target", &ts[1].0);
        r.invariants(&hom_invariants(&a, &b)?, self.ring);
        Ok(())
    }

    pub fn kernel_member(&self, r: &mut Report) -> Result<(), CliError> {
        let (_, p) = self.one_pair()?;
        let obj = AbObject::new(p.clone());
        let oracle = match (self.reps.as_slice(), self.axioms.is_empty()) {
            ([(src, t)], true) => {
                r.text("oracle", format!("model {src}"));
                SerreKernelOracle::model(t.clone())
            }
            ([], false) => {
                r.text("oracle", format!("axioms {} budget {}", self.axioms.len(), self.budget));
                SerreKernelOracle::axioms(self.axioms.iter().map(|(_, a)| a.clone()).collect(), self.budget)
            }
            _ => return Err(CliError::Usage("give either one `--rep` or at least one `--axiom`".into())),
        };
        r.text("pair", p);
        r.verdict_word("member", &oracle.in_kernel(&obj)?.to_string());
        Ok(())
    }

    fn mode(&self) -> Result<Mode, CliError> {
        Ok(match self.reps.as_slice() {
            [] => Mode::AllModules,
            [(_, t)] => Mode::On(Arc::new(t.clone())),
            _ => return Err(CliError::Usage("at most one `--rep` selects the mode".into())),
        })
    }

    pub fn morphism_check(&self, r: &mut Report) -> Result<(), CliError> {
        let (_, m) = &need(&self.morphisms, 1, "morphism")?[0];
        let mode = self.mode()?;
        let src = AbObject::new(m.source.clone());
        let tgt = AbObject::new(m.target.clone());
        let c = check_sequents(&m.theta, &src, &tgt, &mode)?;
        r.text(
            "mode",
            match (&mode, self.reps.first()) {
                (Mode::On(_), Some((f, _))) => format!("on {f}"),
                _ => "all-modules".into(),
            },
        );
        r.field("within_pairs", c.within_pairs, json!(c.within_pairs));
        r.field("total", c.total, json!(c.total));
        r.field("respects_bottom", c.respects_bottom, json!(c.respects_bottom));
        r.field("zero_to_bottom", c.zero_to_bottom, json!(c.zero_to_bottom));
        r.verdict("functional", c.holds());
        Ok(())
    }

    pub fn quotient_equal(&self, r: &mut Report) -> Result<(), CliError> {
        let ms = need(&self.morphisms, 2, "morphism")?;
        let (src, t) = self.one_rep()?;
        let mode = Mode::On(Arc::new(t.clone()));
        let build = |(file, m): &(String, MorphismSpec)| {
            in_file(
                file,
                AbMorphism::new(AbObject::new(m.source.clone()), AbObject::new(m.target.clone()), m.theta.clone(), mode.clone()),
            )
        };
        let (f, g) = (build(&ms[0])?, build(&ms[1])?);
        r.text("rep", src);
        let (mf, mg) = (f.evaluate(t, freyd_core::freyd::Route::Pp)?, g.evaluate(t, freyd_core::freyd::Route::Pp)?);
        r.matrix("first", &mf);
        r.matrix("second", &mg);
        r.verdict("equal", f.equal_in_quotient(&g, t)?);
        Ok(())
    }

    pub fn same_theory(&self, r: &mut Report) -> Result<(), CliError> {
        let ts = need(&self.reps, 2, "rep")?;
        let probes: Vec<PpPair> = self.pairs.iter().map(|(_, p)| p.clone()).collect();
        r.text("first", &ts[0].0);
        r.text("second", &ts[1].0);
        r.field("probes", probes.len(), json!(probes.len()));
        match same_regular_theory_bounded(&ts[0].1, &ts[1].1, &probes)? {
            TheoryVerdict::Agree { .. } => r.verdict_word("theory", "agree"),
            TheoryVerdict::Disagree {
                index,
                witness,
                closed_on_first,
            } => {
                r.verdict_word("theory", "disagree");
                r.lines_witness(&self.pairs[index].0, &witness, closed_on_first);
            }
        }
        Ok(())
    }

    fn data(&self) -> &PairsCategoryData {
        &self.pairs_data.as_ref().expect("nori commands load pairs data").1
    }

    pub fn nori_build(&self, r: &mut Report) -> Result<(), CliError> {
        let data = self.data();
        let d = build_nori_diagram(data, self.dmax)?;
        let q = d.quiver();
        r.field("dmax", self.dmax, json!(self.dmax));
        r.field("vertices", q.num_vertices(), json!(q.num_vertices()));
        r.field("arrows", q.num_arrows(), json!(q.num_arrows()));
        let vrows = q
            .vertex_ids()
            .map(|v| {
                let (p, i) = d.vertex_label(v);
                vec![q.vertex_name(v).to_string(), data.pairs()[p].name.clone(), i.to_string()]
            })
            .collect();
        r.table("vertex_table", &["vertex", "pair", "degree"], vrows);
        let arows = q
            .arrow_ids()
            .map(|a| {
                let ar = q.arrow(a);
                let kind = match d.arrow_kind(a) {
                    ArrowKind::Map { map, .. } => format!("map {}", data.maps()[map].name),
                    ArrowKind::Boundary { triple, .. } => format!("boundary {}", data.triples()[triple].name),
                };
                vec![ar.name.clone(), q.vertex_name(ar.src).to_string(), q.vertex_name(ar.tgt).to_string(), kind]
            })
            .collect();
        r.table("arrow_table", &["arrow", "source", "target", "kind"], arows);
        Ok(())
    }

    pub fn nori_homology(&self, r: &mut Report) -> Result<(), CliError> {
        let data = self.data();
        let d = build_nori_diagram(data, self.dmax)?;
        let t = homology_representation(data, &d, self.ring)?;
        r.text("ring", self.ring);
        let rows = d
            .quiver()
            .vertex_ids()
            .map(|v| {
                let (p, i) = d.vertex_label(v);
                vec![data.pairs()[p].name.clone(), i.to_string(), invariants_text(&t.fiber(v).invariants(), self.ring)]
            })
            .collect();
        r.table("homology", &["pair", "degree", "group"], rows);
        for a in d.quiver().arrow_ids() {
            r.matrix(&d.quiver().arrow(a).name, t.arrow_matrix(a));
        }
        Ok(())
    }

    pub fn les_check(&self, r: &mut Report) -> Result<(), CliError> {
        let data = self.data();
        let d = build_nori_diagram(data, self.dmax)?;
        let t = homology_representation(data, &d, self.ring)?;
        let chosen: Vec<usize> = match &self.triple {
            Some(name) => vec![data
                .triples()
                .iter()
                .position(|x| &x.name == name)
                .ok_or_else(|| CliError::Engine {
                    file: None,
                    error: Error::MissingLesData(format!("no triple `{name}`")),
                })?],
            None => (0..data.triples().len()).collect(),
        };
        let mut all = true;
        let mut rows = Vec::new();
        for i in chosen {
            let ok = check_les_exactness(&t, &d, data, i)?;
            all &= ok;
            rows.push(vec![data.triples()[i].name.clone(), ok.to_string()]);
        }
        r.text("ring", self.ring);
        r.field("dmax", self.dmax, json!(self.dmax));
        r.table("triples", &["triple", "exact"], rows);
        r.verdict("exact", all);
        Ok(())
    }
}

impl Report {
    fn lines_witness(&mut self, src: &str, witness: &PpPair, closed_on_first: bool) {
        self.text("witness", witness);
        self.text("witness_file", src);
        self.field("closed_on_first", closed_on_first, json!(closed_on_first));
        self.json_only("witness", pair_json(witness));
    }
}
