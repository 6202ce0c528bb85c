//! Every command over the fixture corpus twice, byte for byte; every `--dump` re-parses.

use std::path::PathBuf;
use std::process::Command;
use std::sync::Arc;

use freyd_core::formats::{parse_morphism, parse_pair, parse_pairs_data, parse_quiver, parse_representation};
use freyd_core::linalg::ScalarRing;
use freyd_core::nori::{build_nori_diagram, homology_representation};
use freyd_core::pp::parse_formula;
use freyd_core::quiver::Quiver;

use crate::{ensure, Outcome};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name).display().to_string()
}

fn invocations() -> Vec<Vec<String>> {
    let raw: &[&[&str]] = &[
        &["eval", "--rep", "a2_surjective.rep", "--formula", "image_a.f"],
        &["eval", "--rep", "a2_torsion.rep", "--formula", "graph_a.f"],
        &["pair-value", "--rep", "a2_torsion.rep", "--pair", "coker_a.pp"],
        &["pair-value", "--rep", "a2_zero.rep", "--pair", "ker_a.pp"],
        &["closed", "--rep", "a2_surjective.rep", "--pair", "coker_a.pp"],
        &["closed", "--rep", "a2_zero.rep", "--pair", "coker_a.pp"],
        &["implies-all", "--quiver", "a2.quiver", "--formula", "refl.f", "--formula", "refl.f"],
        &["implies-all", "--quiver", "a2.quiver", "--formula", "ker_a.f", "--formula", "refl.f"],
        &["hom", "--rep", "a2_surjective.rep", "--rep", "a2_zero.rep"],
        &["hom", "--rep", "a2_torsion.rep", "--rep", "a2_torsion.rep"],
        &["kernel-member", "--rep", "a2_surjective.rep", "--pair", "coker_a.pp"],
        &["kernel-member", "--quiver", "a2.quiver", "--axiom", "fiber_1.pp", "--pair", "ker_a.pp"],
        &["kernel-member", "--quiver", "a2.quiver", "--axiom", "fiber_1.pp", "--pair", "coker_a.pp", "--budget", "50"],
        &["morphism-check", "--quiver", "a2.quiver", "--morphism", "delta_a.morph"],
        &["morphism-check", "--rep", "a2_zero.rep", "--morphism", "zero_a.morph"],
        &["quotient-equal", "--rep", "a2_zero.rep", "--morphism", "delta_a.morph", "--morphism", "zero_a.morph"],
        &["quotient-equal", "--rep", "a2_surjective.rep", "--morphism", "delta_a.morph", "--morphism", "twice_a.morph"],
        &["same-theory", "--rep", "a2_surjective.rep", "--rep", "a2_surjective_double.rep", "--pair", "coker_a.pp", "--pair", "ker_a.pp"],
        &["same-theory", "--rep", "a2_surjective.rep", "--rep", "a2_zero.rep", "--pair", "ker_a.pp", "--pair", "coker_a.pp"],
        &["nori-build", "--pairs", "disc.pairs", "--dmax", "2"],
        &["nori-homology", "--pairs", "disc.pairs", "--ring", "Z", "--dmax", "2"],
        &["nori-homology", "--pairs", "circle.pairs", "--ring", "Z", "--dmax", "1"],
        &["nori-homology", "--pairs", "klein.pairs", "--ring", "Z"],
        &["les-check", "--pairs", "disc.pairs", "--ring", "Z"],
        &["les-check", "--pairs", "disc.pairs", "--ring", "Fp:3", "--triple", "disc_triple"],
    ];
    raw.iter()
        .map(|args| {
            let mut prev_flag = false;
            args.iter()
                .map(|a| {
                    // values of file flags resolve into the fixture directory
                    let is_file = prev_flag && a.contains('.');
                    prev_flag = a.starts_with("--");
                    if is_file {
                        fixture(a)
                    } else {
                        a.to_string()
                    }
                })
                .collect()
        })
        .collect()
}

fn run(args: &[String]) -> (Option<i32>, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_freyd")).args(args).output().expect("binary runs");
    (out.status.code(), out.stdout, out.stderr)
}

fn flag<'a>(args: &'a [String], name: &str) -> Option<&'a str> {
    args.windows(2).find(|w| w[0] == name).map(|w| w[1].as_str())
}

/// Re-parse each `### kind source` section and compare with the object parsed from the source.
fn check_dump(args: &[String], dump: &str) -> Result<usize, Box<dyn std::error::Error>> {
    let mut sections: Vec<(String, String, String)> = Vec::new();
    for line in dump.lines() {
        if let Some(head) = line.strip_prefix("### ") {
            let (kind, src) = head.split_once(' ').ok_or("malformed section header")?;
            sections.push((kind.into(), src.into(), String::new()));
        } else {
            let last = sections.last_mut().ok_or("text before the first section")?;
            last.2.push_str(line);
            last.2.push('\n');
        }
    }
    let read = |src: &str| std::fs::read_to_string(src);
    let mut quiver: Option<Arc<Quiver>> = None;
    let mut ring = match flag(args, "--ring") {
        Some(r) => r.parse::<ScalarRing>()?,
        None => ScalarRing::Rationals,
    };
    for (kind, src, body) in &sections {
        match kind.as_str() {
            "quiver" => {
                let q = parse_quiver(body)?;
                let orig = if src.ends_with(".quiver") {
                    parse_quiver(&read(src)?)?
                } else {
                    (**parse_representation(&read(src)?, None, None)?.quiver()).clone()
                };
                ensure!(q == orig, "quiver from {src} changed");
                quiver = Some(Arc::new(q));
            }
            "rep" if src == "homology" => {
                let t = parse_representation(body, None, None)?;
                let data = parse_pairs_data(&read(flag(args, "--pairs").ok_or("no pairs")?)?)?;
                let dmax = flag(args, "--dmax").map_or(Ok(2), str::parse)?;
                let expected = homology_representation(&data, &build_nori_diagram(&data, dmax)?, ring)?;
                ensure!(t == expected, "homology representation changed");
            }
            "rep" => {
                let t = parse_representation(body, quiver.as_ref(), None)?;
                ensure!(t == parse_representation(&read(src)?, quiver.as_ref(), None)?, "rep {src} changed");
                ring = t.ring();
            }
            "formula" => {
                let q = quiver.as_ref().ok_or("formula before quiver")?;
                ensure!(
                    parse_formula(q, ring, body.trim())? == parse_formula(q, ring, read(src)?.trim())?,
                    "formula {src} changed"
                );
            }
            "pair" => {
                let q = quiver.as_ref().ok_or("pair before quiver")?;
                ensure!(parse_pair(body, q, ring)? == parse_pair(&read(src)?, q, ring)?, "pair {src} changed");
            }
            "morphism" => {
                let q = quiver.as_ref().ok_or("morphism before quiver")?;
                ensure!(parse_morphism(body, q, ring)? == parse_morphism(&read(src)?, q, ring)?, "morphism {src} changed");
            }
            "pairs" => {
                ensure!(parse_pairs_data(body)? == parse_pairs_data(&read(src)?)?, "pairs data {src} changed");
            }
            other => return Err(format!("unknown section kind `{other}`").into()),
        }
    }
    Ok(sections.len())
}

pub fn determinism_and_round_trip() -> Outcome {
    let (mut runs, mut sections) = (0, 0);
    for base in invocations() {
        for extra in [&[][..], &["--json"][..], &["--show-matrices"][..]] {
            let mut args = base.clone();
            args.extend(extra.iter().map(|s| s.to_string()));
            let first = run(&args);
            ensure!(first.0 == Some(0), "{args:?} failed: {}", String::from_utf8_lossy(&first.2));
            ensure!(run(&args) == first, "{args:?}: output differs between runs");
            runs += 1;
        }
        let mut args = base.clone();
        args.push("--dump".into());
        let first = run(&args);
        ensure!(first.0 == Some(0), "{args:?} failed: {}", String::from_utf8_lossy(&first.2));
        ensure!(run(&args) == first, "{args:?}: dump differs between runs");
        sections += check_dump(&base, &String::from_utf8(first.1)?).map_err(|e| format!("{args:?}: {e}"))?;
    }
    Ok(format!("{runs} reports byte-identical across two runs; {sections} dumped objects re-parse to equal objects"))
}
