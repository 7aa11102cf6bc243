//! Command-line front end. Every subcommand produces a [`Report`] whose
//! checks decide the exit status: 0 when all pass, 1 when any fails, 2 when
//! the arguments cannot be parsed or describe an invalid weight.

use std::collections::BTreeMap;
use std::ffi::OsString;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::critical::{
    comb_lemma, critical_scan, critical_set, pair_condition, prop_identities, ratio_l_factor,
    ratio_l_inf, CharData, CoeffWeight,
};
use crate::error::Error;
use crate::exactnum::{format_rational, parse_rational, PiValue, Rational};
use crate::intertwine::phi_and_c;
use crate::numerology::dims;
use crate::satake::{gk_ratio, local_l, LocalL, SatakeParam};
use crate::weyl::{
    chain_violation, is_balanced, is_dominant_g, kostant_euler_check, kostant_reps, length,
    prime_map, reduced_word, special_elements, vee_map, MultiWeight, SignedPerm, WeightVec,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        }
    }
}

/// Fields serialize in declaration order, which is the canonical order.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub outputs: Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.all_pass() {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is always serializable");
        s.push('\n');
        s
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "ortho-lvalues",
    version,
    about = "Exact checks for L-values of even orthogonal groups"
)]
pub struct Cli {
    /// Print elapsed time to stderr (never part of the report).
    #[arg(long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Critical integers of L_inf(s) for a coefficient weight and character.
    CriticalSet(WeightArgs),
    /// The three equivalent conditions for -n, 1-n being critical.
    LemmaCheck(WeightArgs),
    /// Kostant representatives for the Siegel-type parabolic of SO(2n+2).
    Kostant(RankArgs),
    /// Balanced Kostant representatives.
    Balanced(RankArgs),
    /// L_inf(-n) / L_inf(1-n) as an exact rational multiple of a power of pi.
    ArchRatio(WeightArgs),
    /// Phi(-n) and the intertwining scalar c at each embedding.
    Intertwine(WeightArgs),
    /// Unramified local L-factor and its ratio L(s) / L(1+s).
    Satake(SatakeArgs),
    /// Dimensions and cohomological degrees.
    Dims(DimsArgs),
    /// Alternating sum of Levi dimensions over Kostant representatives.
    EulerCheck(EulerArgs),
    /// Run the per-point checks over a grid of weights and characters.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// Rank n; must agree with the length of every embedding of --mu.
    #[arg(long)]
    pub n: Option<usize>,
    /// Coefficient weight, embeddings separated by ';' and entries by ','.
    #[arg(long, allow_hyphen_values = true)]
    pub mu: String,
    /// Exponent of the character |.|^{-d}.
    #[arg(long, allow_negative_numbers = true)]
    pub d: i64,
    /// Sign parities per embedding, e.g. "0,1" (default all zero).
    #[arg(long)]
    pub eps: Option<String>,
}

#[derive(Debug, Args)]
pub struct RankArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct DimsArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub rf: u64,
}

#[derive(Debug, Args)]
pub struct SatakeArgs {
    /// Satake parameters theta_1..theta_n as rationals, e.g. "1,1/2".
    #[arg(long, allow_hyphen_values = true)]
    pub thetas: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub theta_chi: String,
    #[arg(long, default_value_t = 2)]
    pub q: u64,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub s: i64,
}

#[derive(Debug, Args)]
pub struct EulerArgs {
    #[arg(long)]
    pub n: usize,
    /// A single G-dominant weight of length n+1; without it every dominant
    /// weight with entries in [-bound, bound] is checked.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long, default_value_t = 3)]
    pub bound: i64,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    /// Comma-separated numbers of embeddings.
    #[arg(long, default_value = "1,2")]
    pub rf: String,
    /// Entries of mu range over [-mu_bound, mu_bound].
    #[arg(long, default_value_t = 4)]
    pub mu_bound: i64,
    #[arg(long, default_value_t = -10, allow_negative_numbers = true)]
    pub d_min: i64,
    #[arg(long, default_value_t = 4, allow_negative_numbers = true)]
    pub d_max: i64,
    /// Also vary the sign parities over all of {0,1}^{r_F}.
    #[arg(long)]
    pub all_parities: bool,
    /// Evaluate grid points on the rayon thread pool.
    #[arg(long)]
    pub parallel: bool,
}

/// What a run printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `argv` (including the program name) and executes it.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                },
                _ => Outcome {
                    code: EXIT_USAGE,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    let start = std::time::Instant::now();
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: report.to_json(),
            stderr: if cli.verbose {
                format!("elapsed: {:.3?}\n", start.elapsed())
            } else {
                String::new()
            },
        },
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Builds the report for an already parsed command. Errors are problems with
/// the input; failures of the mathematics show up as failing checks.
pub fn execute(cmd: &Command) -> crate::Result<Report> {
    match cmd {
        Command::CriticalSet(a) => cmd_critical_set(a),
        Command::LemmaCheck(a) => cmd_lemma_check(a),
        Command::Kostant(a) => cmd_kostant(a.n),
        Command::Balanced(a) => cmd_balanced(a.n),
        Command::ArchRatio(a) => cmd_arch_ratio(a),
        Command::Intertwine(a) => cmd_intertwine(a),
        Command::Satake(a) => cmd_satake(a),
        Command::Dims(a) => cmd_dims(a),
        Command::EulerCheck(a) => cmd_euler(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

fn parse_eps(eps: Option<&str>, r_f: usize) -> crate::Result<Vec<u8>> {
    let Some(s) = eps else {
        return Ok(vec![0; r_f]);
    };
    let parsed = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<u8>()
                .map_err(|_| Error::Parse(format!("bad parity {x:?}")))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    if parsed.len() != r_f {
        return Err(Error::SizeMismatch {
            expected: r_f,
            got: parsed.len(),
        });
    }
    Ok(parsed)
}

fn weight_inputs(a: &WeightArgs) -> crate::Result<(CoeffWeight, CharData)> {
    let mu = CoeffWeight::parse(&a.mu)?;
    if let Some(n) = a.n {
        if n != mu.n() {
            return Err(Error::SizeMismatch {
                expected: n,
                got: mu.n(),
            });
        }
    }
    let ch = CharData::new(a.d, parse_eps(a.eps.as_deref(), mu.r_f())?)?;
    Ok((mu, ch))
}

fn echo(mu: &CoeffWeight, ch: &CharData) -> Value {
    json!({
        "n": mu.n(),
        "r_f": mu.r_f(),
        "mu": mu.mu().to_string(),
        "d": ch.d,
        "eps": ch.eps,
    })
}

fn failed(name: &str, e: &Error) -> Check {
    Check::new(name, false, e.to_string())
}

fn cmd_critical_set(a: &WeightArgs) -> crate::Result<Report> {
    let (mu, ch) = weight_inputs(a)?;
    if mu.mu_min() == 0 {
        return Err(Error::ZeroMuMin);
    }
    let scan = critical_scan(&mu, &ch)?;
    let closed: Vec<i64> = (1 + ch.d - mu.mu_min()..=ch.d + mu.mu_min()).collect();
    let kappa_scan = critical_scan(&mu.kappa(), &ch)?;
    let mut checks = vec![
        Check::new(
            "closed_form_matches_scan",
            scan == closed,
            format!("scan {scan:?}"),
        ),
        Check::new(
            "cardinality_is_2_mu_min",
            closed.len() as i64 == 2 * mu.mu_min(),
            format!("{} members, mu_min = {}", closed.len(), mu.mu_min()),
        ),
        Check::new(
            "kappa_invariant",
            kappa_scan == scan,
            format!("kappa mu = {}", mu.kappa().mu()),
        ),
    ];
    let members = match critical_set(&mu, &ch) {
        Ok(set) => set.members().to_vec(),
        Err(e) => {
            checks.push(failed("critical_set", &e));
            closed.clone()
        }
    };
    Ok(Report {
        command: "critical-set".into(),
        inputs: echo(&mu, &ch),
        outputs: json!({
            "members": members,
            "cardinality": members.len(),
            "mu_min": mu.mu_min(),
        }),
        checks,
    })
}

fn cmd_lemma_check(a: &WeightArgs) -> crate::Result<Report> {
    let (mu, ch) = weight_inputs(a)?;
    let lemma = comb_lemma(&mu, &ch)?;
    let mut checks = vec![Check::new(
        "conditions_agree",
        lemma.all_agree(),
        format!(
            "(i) {} (ii) {} (iii) {}, {} witness(es)",
            lemma.cond_i,
            lemma.cond_ii,
            lemma.cond_iii(),
            lemma.witnesses_found
        ),
    )];
    let mut outputs = json!({
        "cond_i": lemma.cond_i,
        "cond_ii": lemma.cond_ii,
        "cond_iii": lemma.cond_iii(),
        "witnesses_found": lemma.witnesses_found,
        "witness": lemma.witness,
        "lambda": lemma.lambda.as_ref().map(ToString::to_string),
    });
    if lemma.cond_iii() {
        match prop_identities(&mu, &ch) {
            Ok(ids) => {
                checks.push(Check::new(
                    "weight_identities",
                    ids.iter().all(|p| p.all_hold()),
                    format!("{} embedding(s)", ids.len()),
                ));
                outputs["identities"] = serde_json::to_value(&ids).expect("serializable");
            }
            Err(e) => checks.push(failed("weight_identities", &e)),
        }
    }
    Ok(Report {
        command: "lemma-check".into(),
        inputs: echo(&mu, &ch),
        outputs,
        checks,
    })
}

/// Lengths `0, 1, ..., n-1, n, n, n+1, ..., 2n`.
pub fn expected_kostant_lengths(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..=2 * n).collect();
    v.insert(n, n);
    v
}

fn cmd_kostant(n: usize) -> crate::Result<Report> {
    let reps = kostant_reps(n)?;
    let lengths: Vec<usize> = reps.iter().map(length).collect();
    let entries: Vec<Value> = reps
        .iter()
        .map(|w| {
            json!({
                "element": w.to_string(),
                "length": length(w),
                "reduced_word": reduced_word(w),
                "balanced": is_balanced(w, n),
            })
        })
        .collect();
    let checks = vec![
        Check::new(
            "count_is_2n_plus_2",
            reps.len() == 2 * (n + 1),
            format!("{} representatives", reps.len()),
        ),
        Check::new(
            "length_multiset",
            lengths == expected_kostant_lengths(n),
            format!("{lengths:?}"),
        ),
        Check::new(
            "reduced_words_have_length",
            reps.iter().all(|w| reduced_word(w).len() == length(w)),
            "",
        ),
    ];
    Ok(Report {
        command: "kostant".into(),
        inputs: json!({ "n": n }),
        outputs: json!({ "count": reps.len(), "representatives": entries }),
        checks,
    })
}

fn cmd_balanced(n: usize) -> crate::Result<Report> {
    let sp = special_elements(n)?;
    let balanced: Vec<SignedPerm> = kostant_reps(n)?
        .into_iter()
        .filter(|w| is_balanced(w, n))
        .collect();
    let mut expected = vec![sp.w_plus.clone(), sp.w_minus.clone()];
    expected.sort();
    let mut found = balanced.clone();
    found.sort();
    let prime_swaps = prime_map(&sp.w_plus, n)? == sp.w_minus;
    let vee_fixes = vee_map(&sp.w_plus, n)? == sp.w_plus && vee_map(&sp.w_minus, n)? == sp.w_minus;
    let checks = vec![
        Check::new(
            "exactly_two",
            balanced.len() == 2,
            format!("{} balanced", balanced.len()),
        ),
        Check::new("match_closed_forms", found == expected, ""),
        Check::new("prime_swaps_w_plus_w_minus", prime_swaps, ""),
        Check::new("vee_fixes_both", vee_fixes, ""),
    ];
    Ok(Report {
        command: "balanced".into(),
        inputs: json!({ "n": n }),
        outputs: json!({
            "balanced": balanced,
            "w_plus": sp.w_plus,
            "w_minus": sp.w_minus,
        }),
        checks,
    })
}

fn cmd_arch_ratio(a: &WeightArgs) -> crate::Result<Report> {
    let (mu, ch) = weight_inputs(a)?;
    let expected = (mu.n() * mu.r_f()) as i64;
    let mut checks = Vec::new();
    let per_tau: Vec<Option<PiValue>> = (0..mu.r_f())
        .map(|tau| ratio_l_factor(&mu, &ch, tau).ok())
        .collect();
    let total = match ratio_l_inf(&mu, &ch) {
        Ok(v) => {
            checks.push(Check::new(
                "pi_exponent_is_n_r_f",
                v.pi_exponent() == Some(expected),
                format!("{v}"),
            ));
            checks.push(Check::new("coefficient_nonzero", !v.is_zero(), ""));
            let product = per_tau
                .iter()
                .try_fold(PiValue::one(), |acc, x| x.as_ref().map(|x| &acc * x));
            checks.push(Check::new(
                "product_over_embeddings",
                product.as_ref() == Some(&v),
                "",
            ));
            Some(v)
        }
        Err(e) => {
            checks.push(failed("ratio_defined", &e));
            None
        }
    };
    Ok(Report {
        command: "arch-ratio".into(),
        inputs: echo(&mu, &ch),
        outputs: json!({ "ratio": total, "per_embedding": per_tau }),
        checks,
    })
}

fn cmd_intertwine(a: &WeightArgs) -> crate::Result<Report> {
    let (mu, ch) = weight_inputs(a)?;
    let n = mu.n();
    let mut checks = Vec::new();
    let mut places = Vec::new();
    for tau in 0..mu.r_f() {
        match phi_and_c(mu.factor(tau), ch.d, ch.eps[tau], n) {
            Ok(r) => {
                for (name, pass) in r.checks(n) {
                    checks.push(Check::new(format!("tau{tau}_{name}"), pass, ""));
                }
                places.push(json!({
                    "gamma_points": r.gamma_points,
                    "exponents": r.steps.iter().map(|s| s.exponent).collect::<Vec<_>>(),
                    "parities": r.steps.iter().map(|s| s.parity).collect::<Vec<_>>(),
                    "betas": r.steps.iter().map(|s| s.beta.to_string()).collect::<Vec<_>>(),
                    "phi": r.phi,
                    "phase_sign": r.phase.as_sign(),
                    "c": r.c,
                    "l_ratio": r.l_ratio,
                    "c_over_l_ratio": r.c_over_l_ratio,
                }));
            }
            Err(e) => {
                checks.push(failed(&format!("tau{tau}_admissible"), &e));
                places.push(Value::Null);
            }
        }
    }
    Ok(Report {
        command: "intertwine".into(),
        inputs: echo(&mu, &ch),
        outputs: json!({ "places": places }),
        checks,
    })
}

fn parse_rationals(s: &str) -> crate::Result<Vec<Rational>> {
    s.split(',').map(|x| parse_rational(x.trim())).collect()
}

fn local_l_text(v: &LocalL) -> String {
    match v {
        LocalL::Value(q) => format_rational(q),
        LocalL::Pole => "pole".into(),
    }
}

fn cmd_satake(a: &SatakeArgs) -> crate::Result<Report> {
    let p = SatakeParam::new(
        parse_rationals(&a.thetas)?,
        parse_rational(&a.theta_chi)?,
        a.q,
    )?;
    let s = a.s;
    let at_s = local_l(s, &p);
    let at_s1 = local_l(s + 1, &p);
    let mut checks = Vec::new();
    let ratio = gk_ratio(s, &p);
    match (&ratio, at_s.value(), at_s1.value()) {
        (Ok(r), Some(l0), Some(l1)) => {
            checks.push(Check::new("quotient_consistency", &(r * l1) == l0, ""));
        }
        (Err(e), _, _) => checks.push(failed("finite_at_s_and_s_plus_1", e)),
        _ => unreachable!("gk_ratio is finite exactly when both values are"),
    }
    let inverted_ok = (0..p.n()).all(|j| {
        let mut t = p.thetas().to_vec();
        t[j] = t[j].recip();
        let q = SatakeParam::new(t, p.theta_chi().clone(), p.q()).expect("still nonzero");
        local_l(s, &q) == at_s
    });
    checks.push(Check::new("inversion_invariant", inverted_ok, ""));
    let mut reversed = p.thetas().to_vec();
    reversed.reverse();
    let rev = SatakeParam::new(reversed, p.theta_chi().clone(), p.q()).expect("still nonzero");
    checks.push(Check::new(
        "permutation_invariant",
        local_l(s, &rev) == at_s,
        "",
    ));
    Ok(Report {
        command: "satake".into(),
        inputs: json!({
            "thetas": p.thetas().iter().map(format_rational).collect::<Vec<_>>(),
            "theta_chi": format_rational(p.theta_chi()),
            "q": p.q(),
            "s": s,
        }),
        outputs: json!({
            "local_l_s": local_l_text(&at_s),
            "local_l_s_plus_1": local_l_text(&at_s1),
            "gk_ratio": ratio.ok().map(|r| format_rational(&r)),
        }),
        checks,
    })
}

fn cmd_dims(a: &DimsArgs) -> crate::Result<Report> {
    let r = dims(a.n, a.rf)?;
    let mut checks: Vec<Check> = r
        .identities()
        .iter()
        .map(|(name, pass)| Check::new(*name, *pass, ""))
        .collect();
    let l_wp = length(&special_elements(a.n as usize)?.w_p) as u64;
    checks.push(Check::new(
        "length_w_p = dim U_P / r_F",
        l_wp * a.rf == r.dim_up,
        format!("length {l_wp}"),
    ));
    Ok(Report {
        command: "dims".into(),
        inputs: json!({ "n": a.n, "r_f": a.rf }),
        outputs: serde_json::to_value(r).expect("serializable"),
        checks,
    })
}

/// Every vector of length `m` with entries in `[-bound, bound]` that is
/// dominant for the full group.
pub fn dominant_g_weights(m: usize, bound: i64) -> Vec<WeightVec> {
    let mut out = Vec::new();
    let mut cur = vec![-bound; m];
    loop {
        let w = WeightVec(cur.clone());
        if is_dominant_g(&w) {
            out.push(w);
        }
        let mut k = m;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if cur[k] < bound {
                cur[k] += 1;
                break;
            }
            cur[k] = -bound;
        }
    }
}

fn cmd_euler(a: &EulerArgs) -> crate::Result<Report> {
    let weights = match &a.lambda {
        Some(s) => {
            let entries = s
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad entry {x:?}")))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            if entries.len() != a.n + 1 {
                return Err(Error::SizeMismatch {
                    expected: a.n + 1,
                    got: entries.len(),
                });
            }
            if let Some(violated) = chain_violation(&entries, 0) {
                return Err(Error::NotDominant {
                    weight: s.clone(),
                    violated,
                });
            }
            vec![WeightVec(entries)]
        }
        None => dominant_g_weights(a.n + 1, a.bound),
    };
    let mut nonzero = Vec::new();
    for w in &weights {
        let total = kostant_euler_check(w, a.n)?;
        if total != 0.into() {
            nonzero.push(json!({ "lambda": w.to_string(), "sum": total.to_string() }));
        }
    }
    Ok(Report {
        command: "euler-check".into(),
        inputs: json!({ "n": a.n, "lambda": a.lambda, "bound": a.bound }),
        outputs: json!({ "weights_checked": weights.len(), "nonzero": nonzero }),
        checks: vec![Check::new(
            "alternating_sum_vanishes",
            nonzero.is_empty(),
            format!("{} weight(s)", weights.len()),
        )],
    })
}

/// Dominant Levi weights `mu_1 >= ... >= mu_{n-1} >= |mu_n| >= 1` with
/// entries in `[-bound, bound]`.
pub fn dominant_levi_weights(n: usize, bound: i64) -> Vec<WeightVec> {
    dominant_g_weights(n, bound)
        .into_iter()
        .filter(|w| w.0[n - 1] != 0)
        .collect()
}

/// One point of the sweep grid.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridPoint {
    pub r_f: usize,
    pub mu: Vec<Vec<i64>>,
    pub d: i64,
    pub eps: Vec<u8>,
}

impl GridPoint {
    pub fn weight(&self) -> CoeffWeight {
        CoeffWeight::new(
            MultiWeight::new(self.mu.iter().cloned().map(WeightVec).collect()).expect("nonempty"),
        )
        .expect("grid weights are dominant")
    }

    pub fn character(&self) -> CharData {
        CharData::new(self.d, self.eps.clone()).expect("parities are 0 or 1")
    }

    pub fn label(&self) -> String {
        format!("mu={} d={} eps={:?}", self.weight().mu(), self.d, self.eps)
    }
}

pub fn sweep_grid(args: &SweepArgs) -> crate::Result<Vec<GridPoint>> {
    let rfs = args
        .rf
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .ok()
                .filter(|&r| r >= 1)
                .ok_or_else(|| Error::Parse(format!("bad r_F {x:?}")))
        })
        .collect::<crate::Result<Vec<_>>>()?;
    if args.n < 2 || !args.n.is_multiple_of(2) {
        return Err(Error::OddRank(args.n));
    }
    let singles = dominant_levi_weights(args.n, args.mu_bound);
    let mut points = Vec::new();
    for &r_f in &rfs {
        let mut tuples: Vec<Vec<Vec<i64>>> = vec![vec![]];
        for _ in 0..r_f {
            tuples = tuples
                .into_iter()
                .flat_map(|t| {
                    singles.iter().map(move |w| {
                        let mut t = t.clone();
                        t.push(w.0.clone());
                        t
                    })
                })
                .collect();
        }
        let parity_choices: Vec<Vec<u8>> = if args.all_parities {
            (0u32..1 << r_f)
                .map(|mask| (0..r_f).map(|t| (mask >> t & 1) as u8).collect())
                .collect()
        } else {
            vec![vec![0; r_f]]
        };
        for mu in &tuples {
            for d in args.d_min..=args.d_max {
                for eps in &parity_choices {
                    points.push(GridPoint {
                        r_f,
                        mu: mu.clone(),
                        d,
                        eps: eps.clone(),
                    });
                }
            }
        }
    }
    points.sort();
    Ok(points)
}

/// Runs every per-point check; a check absent from the list did not apply.
pub fn point_checks(p: &GridPoint) -> Vec<(&'static str, bool)> {
    let mu = p.weight();
    let ch = p.character();
    let mut out = Vec::new();
    let closed: Vec<i64> = (1 + p.d - mu.mu_min()..=p.d + mu.mu_min()).collect();
    let scan = critical_scan(&mu, &ch).unwrap_or_default();
    out.push(("critical_set_matches_scan", scan == closed));
    out.push((
        "critical_set_cardinality",
        scan.len() as i64 == 2 * mu.mu_min(),
    ));
    out.push((
        "critical_set_kappa_invariant",
        critical_scan(&mu.kappa(), &ch).ok() == Some(scan),
    ));
    let lemma = comb_lemma(&mu, &ch);
    out.push((
        "lemma_conditions_agree",
        lemma.as_ref().is_ok_and(|l| l.all_agree()),
    ));
    if pair_condition(&mu, &ch) {
        let expected = (mu.n() * mu.r_f()) as i64;
        out.push((
            "ratio_is_rational_times_pi_n_r_f",
            ratio_l_inf(&mu, &ch).is_ok_and(|v| v.pi_exponent() == Some(expected) && !v.is_zero()),
        ));
        out.push((
            "weight_identities",
            prop_identities(&mu, &ch).is_ok_and(|ids| ids.iter().all(|x| x.all_hold())),
        ));
        if -(mu.n() as i64 + p.d) >= 0 {
            let n = mu.n();
            out.push((
                "intertwining_scalar",
                (0..mu.r_f()).all(|tau| {
                    phi_and_c(mu.factor(tau), p.d, p.eps[tau], n).is_ok_and(|r| r.all_hold(n))
                }),
            ));
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckTally {
    pub passed: usize,
    pub failed: usize,
    /// Up to five failing points in grid order.
    pub first_failures: Vec<String>,
}

/// Evaluates the grid (optionally in parallel) and tallies each check in
/// grid order, so the result does not depend on scheduling.
pub fn sweep_tally(points: &[GridPoint], parallel: bool) -> BTreeMap<String, CheckTally> {
    let results: Vec<Vec<(&'static str, bool)>> = if parallel {
        points.par_iter().map(point_checks).collect()
    } else {
        points.iter().map(point_checks).collect()
    };
    let mut tally: BTreeMap<String, CheckTally> = BTreeMap::new();
    for (p, checks) in points.iter().zip(results) {
        for (name, pass) in checks {
            let t = tally.entry(name.to_string()).or_default();
            if pass {
                t.passed += 1;
            } else {
                t.failed += 1;
                if t.first_failures.len() < 5 {
                    t.first_failures.push(p.label());
                }
            }
        }
    }
    tally
}

fn cmd_sweep(a: &SweepArgs) -> crate::Result<Report> {
    let points = sweep_grid(a)?;
    let tally = sweep_tally(&points, a.parallel);
    let checks = tally
        .iter()
        .map(|(name, t)| {
            Check::new(
                name.clone(),
                t.failed == 0,
                format!("{} passed, {} failed", t.passed, t.failed),
            )
        })
        .collect();
    Ok(Report {
        command: "sweep".into(),
        inputs: json!({
            "n": a.n,
            "r_f": a.rf,
            "mu_bound": a.mu_bound,
            "d_min": a.d_min,
            "d_max": a.d_max,
            "all_parities": a.all_parities,
        }),
        outputs: json!({ "points": points.len(), "tally": tally }),
        checks,
    })
}
