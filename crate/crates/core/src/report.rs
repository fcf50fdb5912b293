//! JSON requests and reports, shared by the command-line tool and the C ABI.
//!
//! A [`Request`] names one analysis and carries all of its input inline, so
//! the digest of its canonical JSON identifies a run. [`run`] turns it into a
//! [`Report`] whose JSON has sorted keys and is byte-stable.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::braid::{
    artin_action, hb_is_trivial, humphries_certificate, is_trivial_braid, linking_matrix,
    permutation_of, BraidWord, Permutation,
};
use crate::foldmap::{
    alternation_certificate, disk_word, monodromy, pullback, simplicial_class, winding_invariant,
    ArcKind, ArrangementSpec, BasepointFrame, CrossingWord, DiskArrangement, ModelKind,
};
use crate::linkhomotopy::REDUCED_FAITHFULNESS_ASSUMPTION;
use crate::theta::{summarize, ThetaInput, DEFAULT_REPRESENTATIVE_BOUND};
use crate::towers::{kernel_degree, level_image, prem_verdict};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Truncation level used when none is given.
pub const DEFAULT_CAP: usize = 4;

pub const HUMPHRIES_REFERENCE: &str = "humphries-torsion-criterion";
pub const ARTIN_REFERENCE: &str = "artin-action";
pub const HOMOTOPY_REFERENCE: &str = "reduced-free-group-action";
pub const TOWER_REFERENCE: &str = "nilpotent-tower";
pub const MONODROMY_REFERENCE: &str = "positive-arc-monodromy";
pub const PULLBACK_REFERENCE: &str = "loop-pullback";
pub const WINDING_REFERENCE: &str = "triangle-winding";
pub const THETA_REFERENCE: &str = "double-point-sum";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot parse {what}: {message}")]
    Parse { what: String, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl ReportError {
    fn parse(what: &str, e: impl std::fmt::Display) -> Self {
        ReportError::Parse {
            what: what.to_string(),
            message: e.to_string(),
        }
    }
}

fn default_cap() -> usize {
    DEFAULT_CAP
}

fn default_bound() -> usize {
    DEFAULT_REPRESENTATIVE_BOUND
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidFlags {
    #[serde(default)]
    pub permutation: bool,
    #[serde(default)]
    pub linking: bool,
    #[serde(default)]
    pub trivial: bool,
    #[serde(default)]
    pub hb_trivial: bool,
    #[serde(default)]
    pub humphries: bool,
    #[serde(default)]
    pub level: Option<usize>,
}

impl BraidFlags {
    fn any(&self) -> bool {
        self.permutation
            || self.linking
            || self.trivial
            || self.hb_trivial
            || self.humphries
            || self.level.is_some()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FoldMapFlags {
    #[serde(default)]
    pub pullback: bool,
    #[serde(default)]
    pub monodromy: bool,
    #[serde(default)]
    pub winding: bool,
    #[serde(default)]
    pub alternation: bool,
}

impl FoldMapFlags {
    fn any(&self) -> bool {
        self.pullback || self.monodromy || self.winding || self.alternation
    }
}

/// One analysis with its input. With no flags set, the braid and fold-map
/// commands run every analysis they offer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "lowercase", deny_unknown_fields)]
pub enum Request {
    Braid {
        braid: Vec<i32>,
        #[serde(default)]
        strands: Option<usize>,
        #[serde(default)]
        flags: BraidFlags,
        #[serde(default = "default_cap")]
        cap: usize,
    },
    Foldmap {
        arrangement: Value,
        #[serde(rename = "loop")]
        path: Value,
        #[serde(default)]
        flags: FoldMapFlags,
    },
    Theta {
        input: Value,
        #[serde(default = "default_bound")]
        bound: usize,
    },
    Verdict {
        torsion: u64,
        /// One-based images.
        permutation: Vec<usize>,
    },
    Selftest,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: Value,
    pub digest: String,
    pub version: &'static str,
    pub results: Value,
    /// One line per analysis, for humans.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl Report {
    /// Pretty JSON with sorted keys.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

/// Hex SHA-256 of the canonical JSON of a request.
pub fn digest(request: &Request) -> String {
    let canonical = serde_json::to_string(&serde_json::to_value(request).expect("serializes"))
        .expect("serializes");
    Sha256::digest(canonical.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn run_json(request: &str) -> Result<Report, ReportError> {
    let request: Request =
        serde_json::from_str(request).map_err(|e| ReportError::parse("request", e))?;
    run(&request)
}

pub fn run(request: &Request) -> Result<Report, ReportError> {
    let mut summary = Vec::new();
    let results = match request {
        Request::Braid {
            braid,
            strands,
            flags,
            cap,
        } => run_braid(braid, *strands, flags, *cap, &mut summary)?,
        Request::Foldmap {
            arrangement,
            path,
            flags,
        } => run_foldmap(arrangement, path, flags, &mut summary)?,
        Request::Theta { input, bound } => run_theta(input, *bound, &mut summary)?,
        Request::Verdict {
            torsion,
            permutation,
        } => run_verdict(*torsion, permutation, &mut summary)?,
        Request::Selftest => run_selftest(&mut summary),
    };
    Ok(Report {
        command: serde_json::to_value(request).expect("serializes"),
        digest: digest(request),
        version: VERSION,
        results,
        summary,
    })
}

/// Parses a braid given as a JSON list of signed generator indices.
pub fn parse_braid(text: &str) -> Result<Vec<i32>, ReportError> {
    serde_json::from_str(text).map_err(|e| ReportError::parse("braid", e))
}

fn outcome<T: Serialize, E: std::fmt::Display>(r: Result<T, E>) -> Value {
    match r {
        Ok(v) => serde_json::to_value(v).expect("serializes"),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn run_braid(
    letters: &[i32],
    strands: Option<usize>,
    flags: &BraidFlags,
    cap: usize,
    summary: &mut Vec<String>,
) -> Result<Value, ReportError> {
    let d = strands.unwrap_or_else(|| {
        letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(1)
    });
    let b = BraidWord::new(d, letters.to_vec()).map_err(|e| ReportError::Invalid(e.to_string()))?;
    let all = !flags.any();
    let mut out = serde_json::Map::new();
    out.insert("braid".into(), json!({ "strands": d, "word": b.to_string() }));
    if all || flags.permutation {
        let p = permutation_of(&b);
        summary.push(format!("permutation: {p}"));
        out.insert(
            "permutation".into(),
            json!({ "images": p, "cycles": p.to_string(), "order": p.order() }),
        );
    }
    if all || flags.linking {
        let m = linking_matrix(&b);
        summary.push(match &m {
            Ok(m) => format!("linking: {m:?}"),
            Err(e) => format!("linking: {e}"),
        });
        out.insert("linking".into(), outcome(m.map(|m| json!({ "matrix": m }))));
    }
    if all || flags.trivial {
        let t = is_trivial_braid(&b);
        summary.push(format!("trivial: {t}"));
        out.insert(
            "trivial".into(),
            json!({ "trivial": t, "reference": ARTIN_REFERENCE }),
        );
    }
    if all || flags.hb_trivial {
        let t = hb_is_trivial(&b);
        summary.push(format!("hb-trivial: {t}"));
        out.insert(
            "hb_trivial".into(),
            json!({
                "trivial": t,
                "assumption": REDUCED_FAITHFULNESS_ASSUMPTION,
                "reference": HOMOTOPY_REFERENCE,
            }),
        );
    }
    if all || flags.humphries {
        let c = humphries_certificate(&b);
        summary.push(format!("humphries: {}", json!(c.verdict).as_str().unwrap_or("")));
        let mut v = serde_json::to_value(&c).expect("serializes");
        v["reference"] = json!(HUMPHRIES_REFERENCE);
        out.insert("humphries".into(), v);
    }
    if all || flags.level.is_some() {
        let level = flags.level.unwrap_or(cap);
        let a = artin_action(&b);
        let tower = level_image(&a, level).and_then(|img| {
            Ok(json!({
                "image": img,
                "identity": img.is_identity(),
                "kernel_degree": kernel_degree(&a, cap)?,
                "cap": cap,
                "reference": TOWER_REFERENCE,
            }))
        });
        summary.push(match &tower {
            Ok(t) => format!("level {level}: identity = {}", t["identity"]),
            Err(e) => format!("level {level}: {e}"),
        });
        out.insert("tower".into(), outcome(tower));
    }
    Ok(Value::Object(out))
}

fn run_foldmap(
    arrangement: &Value,
    path: &Value,
    flags: &FoldMapFlags,
    summary: &mut Vec<String>,
) -> Result<Value, ReportError> {
    let spec: ArrangementSpec = serde_json::from_value(arrangement.clone())
        .map_err(|e| ReportError::parse("arrangement", e))?;
    let arr = DiskArrangement::from_spec(&spec).map_err(|e| ReportError::Invalid(e.to_string()))?;
    let l: CrossingWord =
        serde_json::from_value(path.clone()).map_err(|e| ReportError::parse("loop", e))?;
    l.check_loop(&arr)
        .map_err(|e| ReportError::Invalid(e.to_string()))?;
    let all = !flags.any();
    let mut out = serde_json::Map::new();
    if all || flags.pullback {
        let r = pullback(&arr, &l).map(|pb| {
            summary.push(format!("pullback: {} component(s)", pb.component_count()));
            let pos = pb.count(ArcKind::Positive) as i64;
            let neg = pb.count(ArcKind::Negative) as i64;
            json!({
                "components": pb.component_count(),
                "graph": pb,
                "positive_minus_negative": pos - neg,
                "degree": arr.degree(),
                "reference": PULLBACK_REFERENCE,
            })
        });
        out.insert("pullback".into(), outcome(r));
    }
    if all || flags.monodromy {
        let r = BasepointFrame::canonical(&arr, arr.basepoint())
            .and_then(|frame| monodromy(&arr, &l, &frame))
            .map(|p| {
                summary.push(format!("monodromy: {p}"));
                json!({
                    "images": p,
                    "cycles": p.to_string(),
                    "order": p.order(),
                    "reference": MONODROMY_REFERENCE,
                })
            });
        if let Err(e) = &r {
            summary.push(format!("monodromy: {e}"));
        }
        out.insert("monodromy".into(), outcome(r));
    }
    if all || flags.winding {
        let r = disk_word(&arr, &l).and_then(|w| {
            let ModelKind::Standard { d } = arr.kind() else {
                unreachable!("disk_word accepts standard models only")
            };
            let winding = if d == 2 {
                Some(winding_invariant(&w)?)
            } else {
                None
            };
            let class = if d >= 2 {
                Some(simplicial_class(&w, d)?.letters().to_vec())
            } else {
                None
            };
            summary.push(match winding {
                Some(n) => format!("winding: word {w}, winding {n}"),
                None => format!("winding: word {w}"),
            });
            Ok(json!({
                "word": w,
                "winding": winding,
                "simplicial_class": class,
                "reference": WINDING_REFERENCE,
            }))
        });
        out.insert("winding".into(), outcome(r));
    }
    if all || flags.alternation {
        let r = alternation_certificate(&arr, &l);
        summary.push(match &r {
            Ok(c) => format!("alternation: {}", json!(c.verdict).as_str().unwrap_or("")),
            Err(e) => format!("alternation: {e}"),
        });
        out.insert("alternation".into(), outcome(r));
    }
    Ok(Value::Object(out))
}

fn run_theta(input: &Value, bound: usize, summary: &mut Vec<String>) -> Result<Value, ReportError> {
    let input: ThetaInput =
        serde_json::from_value(input.clone()).map_err(|e| ReportError::parse("theta input", e))?;
    let sum = input
        .build()
        .map_err(|e| ReportError::Invalid(e.to_string()))?;
    let s = summarize(&sum, bound);
    summary.push(format!(
        "theta: {}",
        if s.is_zero {
            "zero".to_string()
        } else {
            format!("{} surviving double coset(s)", s.survivors.len())
        }
    ));
    let mut v = serde_json::to_value(&s).expect("serializes");
    v["reference"] = json!(THETA_REFERENCE);
    v["covering"] = json!(input.covering);
    Ok(v)
}

fn run_verdict(
    torsion: u64,
    permutation: &[usize],
    summary: &mut Vec<String>,
) -> Result<Value, ReportError> {
    let p = Permutation::from_one_based(permutation)
        .map_err(|e| ReportError::Invalid(e.to_string()))?;
    let r = prem_verdict(torsion, &p).map_err(|e| ReportError::Invalid(e.to_string()))?;
    summary.push(format!("verdict: {}", json!(r.verdict).as_str().unwrap_or("")));
    Ok(serde_json::to_value(r).expect("serializes"))
}

const STANDARD2: &str = include_str!("../fixtures/standard2.json");
const STANDARD2_DIAMETER: &str = include_str!("../fixtures/standard2_diameter.json");
const TWO_DIAMETERS: &str = include_str!("../fixtures/two_diameters.json");
const TWO_DIAMETERS_LOOP: &str = include_str!("../fixtures/two_diameters_loop.json");
const THREE_DISKS: &str = include_str!("../fixtures/three_disks.json");
const THREE_DISKS_LOOP: &str = include_str!("../fixtures/three_disks_loop.json");

/// Reruns the worked examples bundled with the crate.
fn run_selftest(summary: &mut Vec<String>) -> Value {
    let bw = |d: usize, l: &[i32]| BraidWord::new(d, l.to_vec()).expect("valid braid");
    let comm = bw(3, &[1]).commutator(&bw(3, &[2]));
    let cubed = comm.pow(3);
    let fold = |arr: &str, l: &str| {
        (
            DiskArrangement::from_json(arr).expect("bundled fixture"),
            CrossingWord::from_json(l).expect("bundled fixture"),
        )
    };
    let mut checks: Vec<(&str, bool)> = vec![
        ("commutator_order_3", permutation_of(&comm).order() == 3),
        (
            "commutator_cubed_unlinked",
            linking_matrix(&cubed).is_ok_and(|m| m.iter().flatten().all(|&x| x == 0)),
        ),
        (
            "commutator_infinite_order",
            humphries_certificate(&comm).verdict == crate::braid::HumphriesVerdict::InfiniteOrder,
        ),
        ("commutator_cubed_hb_nontrivial", !hb_is_trivial(&cubed)),
        (
            "s1_squared_linking",
            linking_matrix(&bw(2, &[1, 1])) == Ok(vec![vec![0, 1], vec![1, 0]]),
        ),
        ("winding_BCAB", winding_invariant("BCAB") == Ok(1)),
        ("winding_BABCB", winding_invariant("BABCB") == Ok(0)),
    ];
    let (arr, l) = fold(STANDARD2, STANDARD2_DIAMETER);
    let frame = BasepointFrame::canonical(&arr, arr.basepoint()).expect("full fiber");
    checks.push((
        "standard2_diameter_transposition",
        monodromy(&arr, &l, &frame).is_ok_and(|p| p.one_based() == [2, 1]),
    ));
    let (arr, l) = fold(TWO_DIAMETERS, TWO_DIAMETERS_LOOP);
    checks.push((
        "nested_three_components",
        pullback(&arr, &l).is_ok_and(|pb| pb.component_count() == 3),
    ));
    let (arr, l) = fold(THREE_DISKS, THREE_DISKS_LOOP);
    checks.push((
        "three_disks_obstructed",
        alternation_certificate(&arr, &l).is_ok_and(|c| {
            c.verdict == crate::foldmap::AlternationVerdict::Obstructed
                && c.interleaved_pairs.len() == 3
        }),
    ));
    let swap = Permutation::transposition(2, 0, 1);
    checks.push((
        "verdict_2_transposition",
        prem_verdict(2, &swap).is_ok_and(|r| r.verdict == crate::towers::PremVerdict::Not2Prem),
    ));
    let passed = checks.iter().filter(|c| c.1).count();
    summary.push(format!("selftest: {passed}/{} passed", checks.len()));
    let map: serde_json::Map<String, Value> = checks
        .into_iter()
        .map(|(name, ok)| (name.to_string(), json!(ok)))
        .collect();
    json!({ "checks": map, "passed": passed, "total": map.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_flags_run_requested_analyses_only() {
        let r = run(&Request::Braid {
            braid: vec![1, 2, -1, -2],
            strands: None,
            flags: BraidFlags {
                humphries: true,
                ..Default::default()
            },
            cap: DEFAULT_CAP,
        })
        .unwrap();
        assert_eq!(r.results["humphries"]["verdict"], "INFINITE_ORDER");
        assert_eq!(r.results["humphries"]["reference"], HUMPHRIES_REFERENCE);
        assert!(r.results.get("linking").is_none());
    }

    #[test]
    fn linking_failure_is_reported_per_flag() {
        let r = run(&Request::Braid {
            braid: vec![1],
            strands: None,
            flags: BraidFlags {
                linking: true,
                trivial: true,
                ..Default::default()
            },
            cap: DEFAULT_CAP,
        })
        .unwrap();
        assert!(r.results["linking"]["error"].is_string());
        assert_eq!(r.results["trivial"]["trivial"], false);
    }

    #[test]
    fn empty_braid_is_trivial() {
        let r = run_json(r#"{"command":"braid","braid":[],"flags":{"trivial":true}}"#).unwrap();
        assert_eq!(r.results["trivial"]["trivial"], true);
    }

    #[test]
    fn output_is_deterministic() {
        let req = r#"{"command":"verdict","torsion":2,"permutation":[2,1]}"#;
        let a = run_json(req).unwrap().to_json();
        let b = run_json(req).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("NOT_2PREM"));
    }

    #[test]
    fn bad_requests() {
        assert!(matches!(run_json("{"), Err(ReportError::Parse { .. })));
        assert!(matches!(
            run_json(r#"{"command":"braid","braid":[0]}"#),
            Err(ReportError::Invalid(_))
        ));
        assert!(parse_braid("[1, x]").is_err());
    }

    #[test]
    fn selftest_passes() {
        let r = run(&Request::Selftest).unwrap();
        assert_eq!(r.results["passed"], r.results["total"], "{}", r.to_json());
    }
}
