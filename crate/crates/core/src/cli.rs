//! Suite orchestration behind the `yangian-forge` binary.

use crate::fock::{commutator, commutator_matrix, derivative_factor, Engine, FockSpace, NormMode, Op};
use crate::geom::{check_stability_instance, geom_suite, GeomError, GeomParams, QuiverRep};
use crate::ratfun::Scalar;
use crate::report::{negative_control, Check, VerificationReport};
use crate::shc::{shc_suite, ShcParams};
use crate::shuffle::{shuffle_suite, yangian_suite, ShuffleParams};
use crate::walg::{build_w002, calibrate_screening, check_virasoro, screening_set, walgebra_suite, WalgError, WalgParams};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;
use thiserror::Error;

/// Environment variable holding the worker count.
pub const WORKERS_ENV: &str = "YANGIAN_FORGE_WORKERS";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Walg(#[from] WalgError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Suite {
    Shuffle,
    Yangian,
    Fock,
    Walgebra,
    Shc,
    Geom,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [Suite::Shuffle, Suite::Yangian, Suite::Fock, Suite::Walgebra, Suite::Shc, Suite::Geom];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Shuffle => "shuffle",
            Suite::Yangian => "yangian",
            Suite::Fock => "fock",
            Suite::Walgebra => "walgebra",
            Suite::Shc => "shc",
            Suite::Geom => "geom",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Suite, CliError> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| CliError::InvalidParams(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FockParams {
    pub level: usize,
    pub mmax: i64,
}

impl Default for FockParams {
    fn default() -> Self {
        FockParams { level: 4, mmax: 3 }
    }
}

/// Parameters for every suite; each suite reads its own part.
#[derive(Clone, Debug)]
pub struct RunParams {
    pub shuffle: ShuffleParams,
    pub fock: FockParams,
    pub walgebra: Vec<WalgParams>,
    pub shc: ShcParams,
    pub geom: GeomParams,
    /// A quiver representation to check instead of the sample library.
    pub quiver: Option<QuiverRep>,
    /// Record wall times. Off by default so reports are byte-identical.
    pub timed: bool,
}

impl Default for RunParams {
    fn default() -> Self {
        RunParams {
            shuffle: ShuffleParams::default(),
            fock: FockParams::default(),
            walgebra: vec![
                WalgParams { config: (0, 0, 2), ..WalgParams::default() },
                WalgParams { config: (0, 1, 1), ..WalgParams::default() },
            ],
            shc: ShcParams::default(),
            geom: GeomParams::default(),
            quiver: None,
            timed: false,
        }
    }
}

fn bound(ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::InvalidParams(what.to_string()))
    }
}

impl RunParams {
    /// Rejects parameters of `suite` outside the documented bounds.
    pub fn validate(&self, suite: Suite) -> Result<(), CliError> {
        let on = |x: Suite| suite == x || suite == Suite::All;
        if on(Suite::Shuffle) || on(Suite::Yangian) {
            let s = &self.shuffle;
            bound(s.y1_max <= 8 && s.serre_max <= 3 && s.commutator_max <= 8, "shuffle: y1-max <= 8, serre-max <= 3, commutator-max <= 8")?;
            bound((1..=12).contains(&s.order) && s.y4_max <= 6, "shuffle: 1 <= order <= 12, y4-max <= 6")?;
        }
        if on(Suite::Fock) {
            bound(self.fock.level <= 6 && self.fock.mmax >= 1 && self.fock.mmax as usize <= self.fock.level, "fock: level <= 6, 1 <= mmax <= level")?;
        }
        if on(Suite::Walgebra) {
            for w in &self.walgebra {
                bound([(0, 0, 1), (0, 0, 2), (0, 1, 1)].contains(&w.config), "walgebra: config is one of 0,0,1 0,0,2 0,1,1")?;
                bound(w.level <= 5 && w.null_level <= 5 && w.kernel_level <= 4, "walgebra: level <= 5")?;
            }
        }
        if on(Suite::Shc) {
            let c = &self.shc;
            bound([vec![3u8], vec![2, 3], vec![3, 3]].contains(&c.colors), "shc: colors is one of 3, 2,3, 3,3")?;
            bound(c.level <= 5 && (1..=5).contains(&c.lmax), "shc: level <= 5, 1 <= lmax <= 5")?;
        }
        if on(Suite::Geom) {
            let g = &self.geom;
            bound(g.fl_n <= 4 && g.euler_n <= 4 && (1..=10).contains(&g.order), "geom: n <= 4, 1 <= order <= 10")?;
            bound(g.rs.iter().all(|r| r.iter().sum::<usize>() <= 4), "geom: r1 + r2 + r3 <= 4")?;
        }
        Ok(())
    }
}

/// Heisenberg commutators, truncation consistency, derivative modes and the
/// Virasoro closure that fixes the normalization.
pub fn fock_suite(p: &FockParams) -> VerificationReport {
    let mut checks = Vec::new();
    for mode in [NormMode::Standard, NormMode::Paper] {
        let space = FockSpace::new(&[3], mode);
        let e = Engine::new(space);
        let sec = e.vacuum_sector();
        for m in 1..=p.mmax {
            let a = e.truncate(&Op::boson(0, m), sec, p.level);
            let b = e.truncate(&Op::boson(0, -m), sec, p.level);
            let want = commutator((3, 0), m, (3, 0), -m, mode);
            let c = Check::new(format!("heisenberg/{}/m={m}", mode.name()), "[b_m, b_-m] = -(h3 / h1 h2 h3) kappa(m)")
                .param("levels", p.level)
                .param("mode", mode.name());
            checks.push(match commutator_matrix(&a, &b, p.level).map(|t| t.as_scalar()) {
                Ok(Some(x)) => c.residuals([&(&x - &want)]),
                Ok(None) => c.outcome(false, "not scalar"),
                Err(err) => c.outcome(false, "-").detail(err.to_string()),
            });
        }
    }

    let e = Engine::new(FockSpace::new(&[2, 3], NormMode::Standard));
    let sec = e.vacuum_sector();
    let cross = commutator_matrix(&e.truncate(&Op::boson(0, 1), sec, p.level), &e.truncate(&Op::boson(1, -1), sec, p.level), p.level);
    let c = Check::new("heisenberg/distinct-bosons", "[b(2)_1, b(3)_-1] = 0");
    checks.push(match cross {
        Ok(t) => c.outcome(t.is_zero(), t.residual_text()),
        Err(err) => c.outcome(false, "-").detail(err.to_string()),
    });

    let w = build_w002(NormMode::Standard);
    let l = w.w2().expect("W2").clone();
    let e = Engine::new(w.space.clone());
    let sec = e.vacuum_sector();
    let n = p.level.saturating_sub(2);
    for m in [-2i64, 0, 1] {
        let op = Op::mode(&l, m);
        let small = e.truncate(&op, sec, n);
        let big = e.truncate(&op, sec, n + 2).restrict(n);
        checks.push(
            Check::new(format!("truncation/W2[{m}]"), "matrices at N and N + 2 agree on levels <= N")
                .param("N", n)
                .outcome(small == big, if small == big { "0" } else { "blocks differ" }),
        );
    }

    let d: Vec<Scalar> = (-3..=3).map(|m| Scalar::int(derivative_factor(1, 1, m) + m + 1)).collect();
    checks.push(Check::new("derivative/h=1,n=1", "(d O)_m = -(h + m) O_m").residuals(&d));
    checks.push(Check::new("derivative/h=1,n=2,m=0", "(d^2 O)_0 = h (h + 1) O_0").residuals([&Scalar::int(derivative_factor(1, 2, 0) - 2)]));

    checks.push(check_virasoro(&w, p.mmax, p.level).0);
    let paper = check_virasoro(&build_w002(NormMode::Paper), p.mmax, p.level).0;
    checks.push(negative_control(paper, "virasoro/paper-control"));

    let mut r = VerificationReport::new("fock", checks);
    r.params.insert("level".into(), p.level.to_string());
    r.params.insert("mmax".into(), p.mmax.to_string());
    r
}

fn quiver_report(q: &QuiverRep) -> VerificationReport {
    let mut c = check_stability_instance("input", q);
    if c.failed() && c.residual == "not on the critical locus" {
        c = c.skipped("off the critical locus");
    }
    let mut r = VerificationReport::new("geom/quiver", vec![c]);
    r.params.insert("n".into(), q.n.to_string());
    r.params.insert("r".into(), format!("{},{},{}", q.r[0], q.r[1], q.r[2]));
    r
}

/// Runs one suite, or all of them merged under `all`.
pub fn run_suite(suite: Suite, p: &RunParams) -> Result<VerificationReport, CliError> {
    p.validate(suite)?;
    let run = |s: Suite| -> Result<VerificationReport, CliError> {
        let t = Instant::now();
        let mut r = match s {
            Suite::Shuffle => shuffle_suite(&p.shuffle),
            Suite::Yangian => yangian_suite(&p.shuffle),
            Suite::Fock => fock_suite(&p.fock),
            Suite::Walgebra => {
                let mut parts = p.walgebra.iter().map(walgebra_suite).collect::<Result<Vec<_>, _>>()?;
                if parts.len() == 1 {
                    parts.remove(0)
                } else {
                    for r in &mut parts {
                        r.suite = r.suite.trim_start_matches("walgebra/").to_string();
                    }
                    VerificationReport::merge("walgebra", parts)
                }
            }
            Suite::Shc => shc_suite(&p.shc),
            Suite::Geom => match &p.quiver {
                Some(q) => quiver_report(q),
                None => geom_suite(&p.geom),
            },
            Suite::All => unreachable!("expanded by the caller"),
        };
        if p.timed {
            r.params.insert("wall_ms".into(), t.elapsed().as_millis().to_string());
        }
        Ok(r)
    };
    match suite {
        Suite::All => {
            let parts = Suite::EACH.into_iter().map(run).collect::<Result<Vec<_>, _>>()?;
            Ok(VerificationReport::merge("all", parts))
        }
        s => run(s),
    }
}

/// Which normalizations `calibrate` tries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NormChoice {
    /// Try `standard` then `paper`, keep the first that closes the Virasoro relation.
    Auto,
    Forced(NormMode),
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalibrateParams {
    pub normalization: NormChoice,
    /// Configurations whose screening offsets are recorded.
    pub configs: Vec<(usize, usize, usize)>,
    pub level: usize,
    pub mmax: i64,
}

impl Default for CalibrateParams {
    fn default() -> Self {
        CalibrateParams { normalization: NormChoice::Auto, configs: vec![(0, 0, 2), (0, 1, 1)], level: 4, mmax: 3 }
    }
}

impl CalibrateParams {
    pub fn empty() -> Self {
        CalibrateParams { normalization: NormChoice::Skip, configs: Vec::new(), ..Self::default() }
    }
}

/// Picks the boson normalization by Virasoro closure on `W002` and records
/// the mode offset of every screening current.
pub fn calibrate(p: &CalibrateParams) -> Result<VerificationReport, CliError> {
    let mut checks = Vec::new();
    let mut selected: Option<NormMode> = None;
    let modes: Vec<NormMode> = match p.normalization {
        NormChoice::Auto => vec![NormMode::Standard, NormMode::Paper],
        NormChoice::Forced(m) => vec![m],
        NormChoice::Skip => Vec::new(),
    };
    for &mode in &modes {
        let (c, _) = check_virasoro(&build_w002(mode), p.mmax, p.level);
        if selected.is_none() && c.passed() {
            selected = Some(mode);
            checks.push(c);
        } else if p.normalization == NormChoice::Auto {
            let id = format!("virasoro/{}-rejected", mode.name());
            checks.push(if c.passed() { c } else { negative_control(c, &id) });
        } else {
            checks.push(c);
        }
    }
    if !modes.is_empty() {
        let c = Check::new("normalization/selected", "the normalization that closes the Virasoro relation");
        checks.push(match selected {
            Some(m) => c.outcome(true, "0").detail(m.name()),
            None => c.outcome(false, "none").detail("no tried normalization closes the Virasoro relation"),
        });
    }
    let mode = selected.unwrap_or_default();
    for &(r1, r2, r3) in &p.configs {
        let w = crate::walg::build((r1, r2, r3), mode)?;
        for s in screening_set(r1, r2, r3) {
            let c = Check::new(format!("offset/{}/{}", w.label(), s.label), "screening current has conformal weight 1")
                .param("mode", mode.name());
            checks.push(match calibrate_screening(&s, &w, 3) {
                Ok(h) => c.outcome(true, "0").detail(format!("offset = {}", h.to_text())),
                Err(err) => c.outcome(false, "-").detail(err.to_string()),
            });
        }
    }
    let mut r = VerificationReport::new("calibrate", checks);
    if let Some(m) = selected {
        r.params.insert("selected-mode".into(), m.name().into());
    }
    Ok(r)
}

/// Sizes the global rayon pool from `n` or `YANGIAN_FORGE_WORKERS`; first call wins.
pub fn configure_workers(n: Option<usize>) -> Result<(), CliError> {
    let n = match n {
        Some(n) => Some(n),
        None => match std::env::var(WORKERS_ENV) {
            Ok(v) => Some(v.trim().parse::<usize>().map_err(|_| CliError::InvalidParams(format!("{WORKERS_ENV}={v:?} is not a worker count")))?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        bound(n >= 1, "worker count must be at least 1")?;
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// `"1,2,3"` as a triple.
pub fn parse_triple(s: &str) -> Result<[usize; 3], CliError> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::InvalidParams(format!("expected R1,R2,R3, got {s:?}")))?;
    <[usize; 3]>::try_from(v).map_err(|_| CliError::InvalidParams(format!("expected three entries, got {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn triples() {
        assert_eq!(parse_triple("0, 1,1").unwrap(), [0, 1, 1]);
        assert!(parse_triple("1,2").is_err());
        assert!(parse_triple("a,b,c").is_err());
    }

    #[test]
    fn bounds() {
        let mut p = RunParams::default();
        p.validate(Suite::All).unwrap();
        p.shc.colors = vec![1];
        assert!(matches!(run_suite(Suite::Shc, &p), Err(CliError::InvalidParams(_))));
    }

    #[test]
    fn empty_calibration_is_a_no_op() {
        let r = calibrate(&CalibrateParams::empty()).unwrap();
        assert!(r.checks.is_empty() && r.pass);
    }

    #[test]
    fn forced_paper_calibration_fails() {
        let p = CalibrateParams { normalization: NormChoice::Forced(NormMode::Paper), configs: Vec::new(), level: 3, mmax: 3 };
        let r = calibrate(&p).unwrap();
        assert!(!r.pass);
        assert!(r.checks.iter().any(|c| c.id == "virasoro/paper" && c.failed()));
    }
}
