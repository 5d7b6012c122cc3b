//! Subcommand definitions and dispatch.

use std::fs;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_traits::One;
use serde_json::json;

use orbilat_core::classify::{
    admissibility_verdict, case1_non_prime_power_search, case1_prime_power_search, case2_search,
    case_i_feasible, DEFAULT_M_BOUND, DEFAULT_PRIME_POWER_BOUND,
};
use orbilat_core::codes::construction::{construction_a, construction_b, g_delta_e};
use orbilat_core::codes::named::{bundled_code_names, named_code, named_lattice};
use orbilat_core::error::{Error, Result};
use orbilat_core::exact::arith::prime_power_base;
use orbilat_core::isometry::search::{
    find_isometry_with_profile, simple_reflections, SearchParams, TargetClass,
};
use orbilat_core::isometry::Isometry;
use orbilat_core::json as core_json;
use orbilat_core::lattice::GramLattice;
use orbilat_core::orbifold::{
    epsilon_from_isometry, orbifold_self_dual_check, trace_on_v_plus_two,
};
use orbilat_core::permgrp::backtrack::{cycle_adapted_base, Searcher};
use orbilat_core::permgrp::schreier::Bsgs;
use orbilat_core::permgrp::ShellAction;
use orbilat_core::Int;

use crate::output::{render_table, Report};

#[derive(Parser)]
#[command(
    name = "orbilat",
    version,
    about = "Exact arithmetic for even lattices, isometries and cyclic orbifold invariants"
)]
pub struct Cli {
    /// Output format: text or json
    #[arg(long, global = true, default_value = "text")]
    pub format: String,
    /// Seed for randomized searches; echoed in every output
    #[arg(long, global = true, default_value_t = 2024)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Lattice inspection
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Isometry inspection
    Isometry {
        #[command(subcommand)]
        cmd: IsometryCmd,
    },
    /// Classification searches and verdicts
    Classify {
        #[command(subcommand)]
        cmd: ClassifyCmd,
    },
    /// Construction A/B lattices from codes
    Construct {
        #[command(subcommand)]
        cmd: ConstructCmd,
    },
    /// Leech lattice certification
    Leech {
        #[command(subcommand)]
        cmd: LeechCmd,
    },
    /// Report tables
    Table {
        #[command(subcommand)]
        cmd: TableCmd,
    },
    /// Permutation-group computations on root shells
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
}

#[derive(Args)]
pub struct LatticeRef {
    /// Bundled lattice name (E8, sqrt2E8, Leech, A<n>)
    #[arg(long)]
    pub name: Option<String>,
    /// Path to a lattice JSON file {"name": ..., "gram": [[..]]}
    #[arg(long)]
    pub lattice: Option<String>,
}

impl LatticeRef {
    fn resolve(&self) -> Result<GramLattice> {
        match (&self.name, &self.lattice) {
            (Some(name), None) => named_lattice(name),
            (None, Some(path)) => core_json::parse_lattice(&fs::read_to_string(path)?),
            _ => Err(Error::Precondition(
                "provide exactly one of --name or --lattice".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
pub enum LatticeCmd {
    /// Rank, determinant, discriminant group and root count
    Info {
        #[command(flatten)]
        lattice: LatticeRef,
    },
    /// Shell counts up to a norm bound
    Shells {
        #[command(flatten)]
        lattice: LatticeRef,
        /// Largest norm to enumerate
        #[arg(long)]
        max_norm: i64,
        /// Also list the vectors (only sensible for small shells)
        #[arg(long, default_value_t = false)]
        vectors: bool,
    },
}

#[derive(Subcommand)]
pub enum IsometryCmd {
    /// Order, cyclotomic profile, fixed/coinvariant data and twists
    Analyze {
        /// Path to an isometry JSON file
        #[arg(long)]
        isometry: String,
        #[command(flatten)]
        lattice: LatticeRef,
    },
}

#[derive(Subcommand)]
pub enum ClassifyCmd {
    /// Necessary-condition verdict for a pair (L, g)
    Verdict {
        /// Path to an isometry JSON file
        #[arg(long)]
        isometry: String,
        #[command(flatten)]
        lattice: LatticeRef,
    },
    /// Non-prime-power twist orders admitting a rank-24 self-dual orbifold
    Case1 {
        /// Scan bound
        #[arg(long, default_value_t = DEFAULT_M_BOUND)]
        bound: u64,
    },
    /// Weight-one twists: admissible (order, rank) pairs
    Case2 {
        /// Scan bound
        #[arg(long, default_value_t = DEFAULT_M_BOUND)]
        bound: u64,
    },
    /// Untwisted-branch feasibility over prime powers
    Casei {
        /// Scan all prime powers up to this bound
        #[arg(long, default_value_t = DEFAULT_PRIME_POWER_BOUND)]
        bound: u64,
        /// Check a single prime power instead
        #[arg(long)]
        n: Option<u64>,
    },
    /// Prime-power twist orders passing the divisibility constraint
    PrimePowers {
        /// Scan bound
        #[arg(long, default_value_t = DEFAULT_PRIME_POWER_BOUND)]
        bound: u64,
    },
    /// Rank-24 self-duality check for one twist order
    SelfDual {
        /// Twist order to check
        #[arg(long)]
        n: u64,
    },
}

#[derive(Args)]
pub struct CodeRef {
    /// Bundled code name (hamming8, golay24, tetracode, repetition8) or a
    /// path to a code JSON file
    #[arg(long)]
    pub code: String,
}

impl CodeRef {
    fn resolve(&self) -> Result<orbilat_core::codes::CodeZp> {
        if bundled_code_names().contains(&self.code.as_str()) {
            named_code(&self.code)
        } else {
            core_json::parse_code(&fs::read_to_string(&self.code)?)
        }
    }
}

#[derive(Subcommand)]
pub enum ConstructCmd {
    /// Construction A: glue the code over copies of A_{p-1}
    A {
        #[command(flatten)]
        code: CodeRef,
        /// Write the resulting lattice JSON here
        #[arg(long)]
        output: Option<String>,
    },
    /// Construction B: the index-p kernel inside Construction A
    B {
        #[command(flatten)]
        code: CodeRef,
        /// Weight vector, comma-separated units mod p, or "all-ones"
        #[arg(long, default_value = "all-ones")]
        e: String,
        /// Write the resulting lattice JSON here
        #[arg(long)]
        output: Option<String>,
    },
}

#[derive(Subcommand)]
pub enum LeechCmd {
    /// Certify the bundled Leech lattice (unimodular, rootless, kissing
    /// number); the full enumeration takes a few minutes
    Check {
        /// Skip the norm-4 kissing-number enumeration
        #[arg(long, default_value_t = false)]
        skip_kissing: bool,
    },
}

#[derive(Subcommand)]
pub enum TableCmd {
    /// Trace and centralizer table for the five fixed-point-free classes
    /// on the rank-8 doubly even lattice
    Traces {
        /// Random-product search budget
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
        /// Skip the centralizer column (faster)
        #[arg(long, default_value_t = false)]
        skip_centralizers: bool,
    },
}

#[derive(Subcommand)]
pub enum GroupCmd {
    /// Order of the isometry group generated by simple reflections,
    /// acting on a shell of short vectors
    Order {
        #[command(flatten)]
        lattice: LatticeRef,
        /// Shell norm to act on (defaults to the smallest nonempty shell)
        #[arg(long)]
        shell_norm: Option<i64>,
    },
    /// Centralizer (and optionally normalizer) orders of a class
    /// representative found by seeded search
    Centralizer {
        #[command(flatten)]
        lattice: LatticeRef,
        /// Target element order
        #[arg(long)]
        order: u64,
        /// Target cyclotomic profile, e.g. "6^4" or "2^2,4"
        #[arg(long)]
        profile: String,
        /// Require g^k = -1 for this k
        #[arg(long)]
        power_minus_one: Option<u64>,
        /// Also compute the normalizer of the generated cyclic group
        #[arg(long, default_value_t = false)]
        normalizer: bool,
        /// Random-product search budget
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
}

pub enum RunOutcome {
    Success,
    PreconditionFailed,
}

pub fn dispatch(cli: Cli) -> Result<RunOutcome> {
    let seed = cli.seed;
    let format = cli.format.clone();
    if format != "text" && format != "json" {
        return Err(Error::Precondition(format!(
            "unknown format '{format}', expected text or json"
        )));
    }
    let report = match cli.command {
        Command::Lattice { cmd } => match cmd {
            LatticeCmd::Info { lattice } => lattice_info(&lattice.resolve()?, seed)?,
            LatticeCmd::Shells {
                lattice,
                max_norm,
                vectors,
            } => lattice_shells(&lattice.resolve()?, max_norm, vectors, seed)?,
        },
        Command::Isometry { cmd } => match cmd {
            IsometryCmd::Analyze { isometry, lattice } => {
                let (iso, claimed) = load_isometry_with_meta(&isometry, &lattice)?;
                isometry_analyze(&iso, claimed.as_deref(), seed)?
            }
        },
        Command::Classify { cmd } => match cmd {
            ClassifyCmd::Verdict { isometry, lattice } => {
                let iso = load_isometry(&isometry, &lattice)?;
                let (report, outcome) = classify_verdict(&iso, seed)?;
                report.print(&format);
                return Ok(outcome);
            }
            ClassifyCmd::Case1 { bound } => classify_case1(bound, seed),
            ClassifyCmd::Case2 { bound } => classify_case2(bound, seed),
            ClassifyCmd::Casei { bound, n } => classify_casei(bound, n, seed)?,
            ClassifyCmd::PrimePowers { bound } => classify_prime_powers(bound, seed),
            ClassifyCmd::SelfDual { n } => classify_self_dual(n, seed),
        },
        Command::Construct { cmd } => match cmd {
            ConstructCmd::A { code, output } => construct_a_cmd(&code.resolve()?, output, seed)?,
            ConstructCmd::B { code, e, output } => {
                construct_b_cmd(&code.resolve()?, &e, output, seed)?
            }
        },
        Command::Leech { cmd } => match cmd {
            LeechCmd::Check { skip_kissing } => leech_check(skip_kissing, seed)?,
        },
        Command::Table { cmd } => match cmd {
            TableCmd::Traces {
                budget,
                skip_centralizers,
            } => table_traces(budget, skip_centralizers, seed)?,
        },
        Command::Group { cmd } => match cmd {
            GroupCmd::Order {
                lattice,
                shell_norm,
            } => group_order(&lattice.resolve()?, shell_norm, seed)?,
            GroupCmd::Centralizer {
                lattice,
                order,
                profile,
                power_minus_one,
                normalizer,
                budget,
            } => group_centralizer(
                &lattice.resolve()?,
                order,
                &profile,
                power_minus_one,
                normalizer,
                budget,
                seed,
            )?,
        },
    };
    report.print(&format);
    Ok(RunOutcome::Success)
}

fn load_isometry(path: &str, lattice: &LatticeRef) -> Result<Isometry> {
    Ok(load_isometry_with_meta(path, lattice)?.0)
}

fn load_isometry_with_meta(
    path: &str,
    lattice: &LatticeRef,
) -> Result<(Isometry, Option<String>)> {
    let fallback = match (&lattice.name, &lattice.lattice) {
        (None, None) => None,
        _ => Some(lattice.resolve()?),
    };
    let text = fs::read_to_string(path)?;
    let parsed = core_json::parse_isometry(&text, fallback.as_ref())?;
    Ok((parsed.isometry, parsed.claimed_class))
}

fn lattice_info(lattice: &GramLattice, seed: u64) -> Result<Report> {
    let det = lattice.det();
    let disc = lattice.discriminant_group()?;
    let roots = lattice.root_count()?;
    let name = lattice.name().unwrap_or("(unnamed)");
    let text = format!(
        "lattice {name}\nrank = {}\ndet = {det}\ndiscriminant group = {disc}\nroots (norm 2) = {roots}\neven = true, doubly even = {}",
        lattice.rank(),
        lattice.is_doubly_even(),
    );
    let json = json!({
        "name": lattice.name(),
        "rank": lattice.rank(),
        "det": core_json::int_to_value(&det),
        "discriminant": disc.elementary_divisors.iter().map(core_json::int_to_value).collect::<Vec<_>>(),
        "roots": roots,
        "doubly_even": lattice.is_doubly_even(),
    });
    Ok(Report::new(json, text, seed))
}

fn lattice_shells(lattice: &GramLattice, max_norm: i64, vectors: bool, seed: u64) -> Result<Report> {
    let shells = lattice.shells(max_norm)?;
    let mut rows = Vec::new();
    let mut jshells = Vec::new();
    for (norm, shell) in &shells {
        rows.push(vec![norm.to_string(), shell.count().to_string()]);
        jshells.push(core_json::shell_to_value(shell, lattice.name(), vectors));
    }
    let text = if rows.is_empty() {
        "no vectors".to_string()
    } else {
        let mut t = render_table(&["norm", "count"], &rows);
        if vectors {
            for (norm, shell) in &shells {
                t.push_str(&format!("\nnorm {norm}:"));
                for i in 0..shell.count() {
                    let v = shell.vector(i);
                    let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
                    t.push_str(&format!("\n  ({})", coords.join(", ")));
                }
            }
        }
        t
    };
    let json = json!({
        "lattice": lattice.name(),
        "max_norm": max_norm,
        "shells": jshells,
    });
    Ok(Report::new(json, text, seed))
}

fn isometry_analyze(iso: &Isometry, claimed: Option<&str>, seed: u64) -> Result<Report> {
    let n = iso.order();
    let profile = iso.cyclotomic_profile();
    let cfpf = iso.is_completely_fixed_point_free();
    let fixed = iso.fixed_sublattice();
    let coinv = iso.coinvariant_sublattice();
    let dims = iso.eigenspace_dims();
    let dets: Vec<String> = (1..=n)
        .map(|s| format!("|det(1-g^{s})| = {}", iso.det_one_minus_power(s)))
        .collect();
    let mut text = format!(
        "order = {n}\nprofile = {}\ncompletely fixed point free = {cfpf}\nrank(fixed) = {}, rank(coinvariant) = {}\neigenspace dims = {:?}",
        profile.display(),
        fixed.rank(),
        coinv.rank(),
        dims,
    );
    if let Some(c) = claimed {
        text.push_str(&format!("\nclaimed class (untrusted metadata) = {c}"));
    }
    for d in &dets {
        text.push('\n');
        text.push_str(d);
    }
    let mut epsilons = Vec::new();
    if cfpf {
        text.push_str("\ntwisted-sector weights:");
        for s in 1..n.max(1) {
            let eps = epsilon_from_isometry(iso, s)?;
            text.push_str(&format!(
                "\n  s = {s}: epsilon = {} (order {})",
                eps.value, eps.twist_order
            ));
            epsilons.push(json!({
                "s": s,
                "epsilon": core_json::rat_to_value(&eps.value),
                "twist_order": eps.twist_order,
            }));
        }
    }
    let json = json!({
        "order": n,
        "claimed_class": claimed,
        "profile": profile.factors().iter().map(|&(d, m)| json!([d, m])).collect::<Vec<_>>(),
        "completely_fixed_point_free": cfpf,
        "fixed_rank": fixed.rank(),
        "coinvariant_rank": coinv.rank(),
        "eigenspace_dims": dims,
        "det_one_minus_powers": (1..=n).map(|s| core_json::int_to_value(&iso.det_one_minus_power(s))).collect::<Vec<_>>(),
        "epsilons": epsilons,
    });
    Ok(Report::new(json, text, seed))
}

fn classify_verdict(iso: &Isometry, seed: u64) -> Result<(Report, RunOutcome)> {
    let verdict = admissibility_verdict(iso.lattice(), iso)?;
    let mut text = format!(
        "summary = {}\nrootless = {}\ncompletely fixed point free = {}\norder = {}, rank = {}",
        verdict.summary.as_str(),
        verdict.rootless,
        verdict.completely_fixed_point_free,
        verdict.order,
        verdict.rank,
    );
    if let Some(ci) = &verdict.case_i {
        text.push_str(&format!(
            "\nuntwisted branch: feasible = {} (n = {}^{})",
            ci.feasible, ci.p, ci.t
        ));
    }
    if !verdict.case_ii.is_empty() {
        let rows: Vec<Vec<String>> = verdict
            .case_ii
            .iter()
            .map(|r| {
                vec![
                    r.s.to_string(),
                    r.m.to_string(),
                    r.epsilon.to_string(),
                    match r.subcase {
                        Some(orbilat_core::classify::TwistSubcase::WeightOneMinusRecip) => {
                            "1-1/m".into()
                        }
                        Some(orbilat_core::classify::TwistSubcase::WeightOne) => "1".into(),
                        None => "-".into(),
                    },
                    r.admissible.to_string(),
                ]
            })
            .collect();
        text.push('\n');
        text.push_str(&render_table(
            &["s", "m", "epsilon", "subcase", "admissible"],
            &rows,
        ));
    }
    for reason in &verdict.reasons {
        text.push_str(&format!("\nreason: {} [{}]", reason.constraint, reason.values));
    }
    for note in &verdict.notes {
        text.push_str(&format!("\nnote: {note}"));
    }
    let failed = !verdict.rootless || !verdict.completely_fixed_point_free;
    let report = Report::new(core_json::verdict_to_value(&verdict), text, seed);
    Ok((
        report,
        if failed {
            RunOutcome::PreconditionFailed
        } else {
            RunOutcome::Success
        },
    ))
}

fn classify_case1(bound: u64, seed: u64) -> Report {
    let report = case1_non_prime_power_search(bound);
    let list = report
        .survivors
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(", ");
    let mut text = format!("admissible non-prime-power twist orders up to {bound}:\n{list}");
    if !report.cited_exclusions.is_empty() {
        text.push_str(&format!(
            "\nexcluded by the cited class list (arithmetic survivors): {:?}",
            report.cited_exclusions
        ));
    }
    let json = json!({
        "bound": bound,
        "survivors": report.survivors,
        "cited_exclusions": report.cited_exclusions,
    });
    Report::new(json, text, seed)
}

fn classify_case2(bound: u64, seed: u64) -> Report {
    let report = case2_search(bound);
    let rows: Vec<Vec<String>> = report
        .survivors
        .iter()
        .map(|(m, ell)| vec![m.to_string(), ell.to_string()])
        .collect();
    let text = format!(
        "weight-one twists up to {bound}:\n{}",
        render_table(&["m", "rank"], &rows)
    );
    let json = json!({
        "bound": bound,
        "survivors": report.survivors.iter().map(|&(m, l)| json!([m, l])).collect::<Vec<_>>(),
    });
    Report::new(json, text, seed)
}

fn classify_casei(bound: u64, single: Option<u64>, seed: u64) -> Result<Report> {
    let ns: Vec<u64> = match single {
        Some(n) => vec![n],
        None => (2..=bound)
            .filter(|&n| prime_power_base(n).is_some())
            .collect(),
    };
    let mut rows = Vec::new();
    let mut jrows = Vec::new();
    for n in ns {
        let r = case_i_feasible(n)?;
        rows.push(vec![
            format!("{} = {}^{}", r.n, r.p, r.t),
            r.feasible.to_string(),
            r.forced_prime.to_string(),
        ]);
        jrows.push(json!({
            "n": r.n,
            "p": r.p,
            "t": r.t,
            "feasible": r.feasible,
            "forced_prime": r.forced_prime,
        }));
    }
    let text = render_table(&["n", "feasible", "feasible iff prime"], &rows);
    Ok(Report::new(json!({ "entries": jrows }), text, seed))
}

fn classify_prime_powers(bound: u64, seed: u64) -> Report {
    let report = case1_prime_power_search(bound);
    let rows: Vec<Vec<String>> = report
        .entries
        .iter()
        .map(|e| {
            vec![
                e.m.to_string(),
                e.divisibility.to_string(),
                e.ell.map_or("-".into(), |l| l.to_string()),
                e.survivor.to_string(),
                if e.cited_exclusion { "yes" } else { "" }.to_string(),
            ]
        })
        .collect();
    let text = format!(
        "prime-power twists up to {bound} (survivors: {:?}):\n{}",
        report.survivors,
        render_table(&["m", "divisibility", "rank", "survivor", "cited exclusion"], &rows)
    );
    let json = json!({
        "bound": bound,
        "survivors": report.survivors,
        "entries": report.entries.iter().map(|e| json!({
            "m": e.m,
            "divisibility": e.divisibility,
            "ell": e.ell,
            "survivor": e.survivor,
            "cited_exclusion": e.cited_exclusion,
        })).collect::<Vec<_>>(),
    });
    Report::new(json, text, seed)
}

fn classify_self_dual(n: u64, seed: u64) -> Report {
    let r = orbifold_self_dual_check(n);
    let mut text = format!(
        "self-duality check for order {n}: {}",
        if r.passes { "PASS" } else { "FAIL" }
    );
    text.push_str(&format!(
        "\nphi(n) | 24: {}; epsilon conditions: {}; weight-one total: {:?}; cited class: {:?}",
        r.phi_divides_24, r.epsilon_conditions_hold, r.weight_one_total, r.leech_class_cited
    ));
    for p in &r.powers {
        text.push_str(&format!(
            "\n  s = {}: m = {}, epsilon = {} ({})",
            p.s,
            p.m,
            p.epsilon,
            if p.as_required { "ok" } else { "violates" }
        ));
    }
    let json = json!({
        "n": n,
        "passes": r.passes,
        "phi_divides_24": r.phi_divides_24,
        "epsilon_conditions_hold": r.epsilon_conditions_hold,
        "weight_one_total": r.weight_one_total,
        "leech_class_cited": r.leech_class_cited,
        "powers": r.powers.iter().map(|p| json!({
            "s": p.s,
            "m": p.m,
            "epsilon": core_json::rat_to_value(&p.epsilon),
            "as_required": p.as_required,
        })).collect::<Vec<_>>(),
    });
    Report::new(json, text, seed)
}

fn construct_a_cmd(code: &orbilat_core::codes::CodeZp, output: Option<String>, seed: u64) -> Result<Report> {
    let glue = construction_a(code)?;
    let l = &glue.lattice;
    let det = l.det();
    let disc = l.discriminant_group()?;
    let roots = l.root_count()?;
    let text = format!(
        "construction A over p = {}, length {}\nrank = {}\n[N : base] = {}\ndet = {det}\ndiscriminant = {disc}\nroots = {roots}",
        glue.p,
        glue.k,
        l.rank(),
        glue.index_over_base,
    );
    if let Some(path) = &output {
        fs::write(path, core_json::lattice_to_value(l).to_string())?;
    }
    let json = json!({
        "p": glue.p,
        "length": glue.k,
        "rank": l.rank(),
        "index_over_base": core_json::int_to_value(&glue.index_over_base),
        "det": core_json::int_to_value(&det),
        "discriminant": disc.elementary_divisors.iter().map(core_json::int_to_value).collect::<Vec<_>>(),
        "roots": roots,
        "output": output,
    });
    Ok(Report::new(json, text, seed))
}

fn parse_weight_vector(e: &str, k: usize, p: u64) -> Result<Vec<u64>> {
    if e == "all-ones" {
        return Ok(vec![1; k]);
    }
    let parts: Vec<u64> = e
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<u64>()
                .map_err(|err| Error::Precondition(format!("bad weight entry '{s}': {err}")))
        })
        .collect::<Result<_>>()?;
    if parts.len() != k {
        return Err(Error::Precondition(format!(
            "weight vector has {} entries, code length is {k}",
            parts.len()
        )));
    }
    if parts.iter().any(|&v| v % p == 0) {
        return Err(Error::Precondition(
            "weight vector entries must be units mod p".into(),
        ));
    }
    Ok(parts)
}

fn construct_b_cmd(
    code: &orbilat_core::codes::CodeZp,
    e: &str,
    output: Option<String>,
    seed: u64,
) -> Result<Report> {
    let glue = construction_a(code)?;
    let weights = parse_weight_vector(e, glue.k, glue.p)?;
    let (sub, index) = construction_b(&glue, &weights)?;
    let g = g_delta_e(&glue, &weights)?;
    let l = &sub.lattice;
    let det = l.det();
    let disc = l.discriminant_group()?;
    let roots = l.root_count()?;
    let norm4 = l.shell(4)?.count();
    let stabilizes = g.restrict_to(&sub).is_ok();
    let text = format!(
        "construction B over p = {}, length {}, e = {weights:?}\nrank = {}\n[A : B] = {index}\ndet = {det}\ndiscriminant = {disc}\nroots = {roots}\nnorm-4 vectors = {norm4}\ncyclic isometry stabilizes B = {stabilizes}",
        glue.p,
        glue.k,
        l.rank(),
    );
    if let Some(path) = &output {
        fs::write(path, core_json::lattice_to_value(l).to_string())?;
    }
    let json = json!({
        "p": glue.p,
        "length": glue.k,
        "e": weights,
        "rank": l.rank(),
        "index_in_a": core_json::int_to_value(&index),
        "det": core_json::int_to_value(&det),
        "discriminant": disc.elementary_divisors.iter().map(core_json::int_to_value).collect::<Vec<_>>(),
        "roots": roots,
        "norm4_count": norm4,
        "stabilized_by_cyclic_isometry": stabilizes,
        "output": output,
    });
    Ok(Report::new(json, text, seed))
}

fn leech_check(skip_kissing: bool, seed: u64) -> Result<Report> {
    let l = orbilat_core::codes::named::leech();
    let det = l.det();
    let roots = l.root_count()?;
    let det_ok = det == Int::one();
    let roots_ok = roots == 0;
    let mut text = format!(
        "rank = {} [{}]\ndet = {det} [{}]\nroots = {roots} [{}]",
        l.rank(),
        if l.rank() == 24 { "PASS" } else { "FAIL" },
        if det_ok { "PASS" } else { "FAIL" },
        if roots_ok { "PASS" } else { "FAIL" },
    );
    let mut kissing = None;
    if !skip_kissing {
        let count = l.shell(4)?.count();
        kissing = Some(count);
        text.push_str(&format!(
            "\nkissing number = {count} [{}]",
            if count == 196560 { "PASS" } else { "FAIL" }
        ));
    }
    let all_ok = det_ok && roots_ok && l.rank() == 24 && kissing.is_none_or(|k| k == 196560);
    text.push_str(&format!(
        "\noverall: {}",
        if all_ok { "PASS" } else { "FAIL" }
    ));
    let json = json!({
        "rank": l.rank(),
        "det": core_json::int_to_value(&det),
        "roots": roots,
        "kissing": kissing,
        "passes": all_ok,
    });
    if !all_ok {
        return Err(Error::Inconsistency(
            "Leech lattice certification failed".into(),
        ));
    }
    Ok(Report::new(json, text, seed))
}

/// The five target class invariants on the rank-8 doubly even lattice, in
/// the conventional table order.
fn trace_targets() -> Vec<TargetClass> {
    vec![
        TargetClass {
            order: 6,
            profile: vec![(6, 4)],
            power_minus_identity: Some(3),
            label: Some("order 6, Phi6^4, g^3 = -1".into()),
        },
        TargetClass {
            order: 10,
            profile: vec![(10, 2)],
            power_minus_identity: Some(5),
            label: Some("order 10, Phi10^2, g^5 = -1".into()),
        },
        TargetClass {
            order: 30,
            profile: vec![(30, 1)],
            power_minus_identity: Some(15),
            label: Some("order 30, Phi30, g^15 = -1".into()),
        },
        TargetClass {
            order: 4,
            profile: vec![(4, 4)],
            power_minus_identity: Some(2),
            label: Some("order 4, Phi4^4, g^2 = -1".into()),
        },
        TargetClass {
            order: 8,
            profile: vec![(8, 2)],
            power_minus_identity: Some(4),
            label: Some("order 8, Phi8^2, g^4 = -1".into()),
        },
    ]
}

fn table_traces(budget: u64, skip_centralizers: bool, seed: u64) -> Result<Report> {
    let lattice = Arc::new(named_lattice("sqrt2E8")?);
    let gens = simple_reflections(&lattice)?;
    let shell = lattice.shell(4)?;
    let action = ShellAction::new(&shell, lattice.rank())?;
    let perm_gens: Vec<_> = gens
        .iter()
        .map(|g| action.permutation_of(g))
        .collect::<Result<_>>()?;
    let neg = action.permutation_of(&Isometry::neg_identity(Arc::clone(&lattice)))?;
    let products = action.pairwise_products(&lattice);

    let group_order = Bsgs::new(&perm_gens, &[]).order();

    let mut rows = Vec::new();
    let mut jrows = Vec::new();
    let mut total_dim = Int::one();
    for target in trace_targets() {
        let out = find_isometry_with_profile(
            Arc::clone(&lattice),
            &gens,
            &target,
            SearchParams {
                seed,
                budget,
                max_word_len: 0,
            },
        )?;
        let Some(iso) = out.isometry else {
            return Err(Error::Precondition(format!(
                "no representative found for {} within budget {budget}",
                target.label.as_deref().unwrap_or("target")
            )));
        };
        let trace_report = trace_on_v_plus_two(&lattice, &iso, &shell)?;
        total_dim = trace_report.total_dimension.clone();
        let (cent_full, cent_mod) = if skip_centralizers {
            (None, None)
        } else {
            let perm = action.permutation_of(&iso)?;
            let bsgs = Bsgs::new(&perm_gens, &cycle_adapted_base(&perm));
            let mut searcher = Searcher::new(&bsgs);
            searcher.set_pair_invariant(products.clone());
            let orders = searcher.centralizer_orders_mod_center(&perm, &neg)?;
            (Some(orders.full), Some(orders.modulo_center))
        };
        let label = target.label.clone().unwrap_or_default();
        rows.push(vec![
            label.clone(),
            trace_report.trace.to_string(),
            cent_mod
                .as_ref()
                .map_or("-".into(), |c: &Int| c.to_string()),
            cent_full
                .as_ref()
                .map_or("-".into(), |c: &Int| c.to_string()),
            out.words_tried.to_string(),
        ]);
        jrows.push(json!({
            "class_invariant": label,
            "order": target.order,
            "profile": target.profile.iter().map(|&(d, m)| json!([d, m])).collect::<Vec<_>>(),
            "trace_weight2": core_json::int_to_value(&trace_report.trace),
            "symmetric_square_part": core_json::int_to_value(&trace_report.symmetric_square_part),
            "exponential_part": core_json::int_to_value(&trace_report.exponential_part),
            "centralizer_mod_negation": cent_mod.as_ref().map(core_json::int_to_value),
            "centralizer_full": cent_full.as_ref().map(core_json::int_to_value),
            "words_tried": out.words_tried,
        }));
    }
    let text = format!(
        "isometry group order = {group_order}\nweight-2 fixed subspace dimension = {total_dim}\n{}",
        render_table(
            &[
                "class invariant",
                "trace on weight 2",
                "centralizer (mod -1)",
                "centralizer (full)",
                "words",
            ],
            &rows
        )
    );
    let json = json!({
        "group_order": core_json::int_to_value(&group_order),
        "weight2_dimension": core_json::int_to_value(&total_dim),
        "rows": jrows,
        "budget": budget,
    });
    Ok(Report::new(json, text, seed))
}

fn smallest_shell(lattice: &GramLattice) -> Result<(i64, orbilat_core::CosetShell)> {
    for norm in [2i64, 4, 6, 8] {
        let shell = lattice.shell(norm)?;
        if !shell.is_empty() {
            return Ok((norm, shell));
        }
    }
    Err(Error::Precondition(
        "no nonempty shell of norm at most 8".into(),
    ))
}

fn group_order(lattice: &GramLattice, shell_norm: Option<i64>, seed: u64) -> Result<Report> {
    let arc = Arc::new(lattice.clone());
    let gens = simple_reflections(&arc)?;
    let (norm, shell) = match shell_norm {
        Some(n) => (n, lattice.shell(n)?),
        None => smallest_shell(lattice)?,
    };
    let action = ShellAction::new(&shell, lattice.rank())?;
    let perm_gens: Vec<_> = gens
        .iter()
        .map(|g| action.permutation_of(g))
        .collect::<Result<_>>()?;
    let bsgs = Bsgs::new(&perm_gens, &[]);
    let order = bsgs.order();
    let text = format!(
        "action on the norm-{norm} shell ({} vectors)\ngroup order = {order}",
        shell.count()
    );
    let json = json!({
        "lattice": lattice.name(),
        "shell_norm": norm,
        "shell_size": shell.count(),
        "order": core_json::int_to_value(&order),
        "base_length": bsgs.depth(),
    });
    Ok(Report::new(json, text, seed))
}

fn parse_profile(text: &str) -> Result<Vec<(u64, usize)>> {
    let mut out = Vec::new();
    for part in text.split(',') {
        let part = part.trim();
        let (d, m) = match part.split_once('^') {
            Some((d, m)) => (
                d.trim()
                    .parse::<u64>()
                    .map_err(|e| Error::Precondition(format!("bad profile '{part}': {e}")))?,
                m.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::Precondition(format!("bad profile '{part}': {e}")))?,
            ),
            None => (
                part.parse::<u64>()
                    .map_err(|e| Error::Precondition(format!("bad profile '{part}': {e}")))?,
                1,
            ),
        };
        out.push((d, m));
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn group_centralizer(
    lattice: &GramLattice,
    order: u64,
    profile: &str,
    power_minus_one: Option<u64>,
    normalizer: bool,
    budget: u64,
    seed: u64,
) -> Result<Report> {
    let arc = Arc::new(lattice.clone());
    let gens = simple_reflections(&arc)?;
    let profile = parse_profile(profile)?;
    let target = TargetClass {
        order,
        profile,
        power_minus_identity: power_minus_one,
        label: None,
    };
    let out = find_isometry_with_profile(
        Arc::clone(&arc),
        &gens,
        &target,
        SearchParams {
            seed,
            budget,
            max_word_len: 0,
        },
    )?;
    let Some(iso) = out.isometry else {
        return Err(Error::Precondition(format!(
            "no representative with order {order} found within budget {budget}"
        )));
    };
    let (_, shell) = smallest_shell(lattice)?;
    let action = ShellAction::new(&shell, lattice.rank())?;
    let perm_gens: Vec<_> = gens
        .iter()
        .map(|g| action.permutation_of(g))
        .collect::<Result<_>>()?;
    let perm = action.permutation_of(&iso)?;
    let bsgs = Bsgs::new(&perm_gens, &cycle_adapted_base(&perm));
    let mut searcher = Searcher::new(&bsgs);
    searcher.set_pair_invariant(action.pairwise_products(lattice));

    let neg_iso = Isometry::neg_identity(Arc::clone(&arc));
    let neg = action.permutation_of(&neg_iso)?;
    let has_negation = bsgs.contains(&neg);
    let (full, modulo) = if has_negation && !neg.is_identity() {
        let orders = searcher.centralizer_orders_mod_center(&perm, &neg)?;
        (orders.full, Some(orders.modulo_center))
    } else {
        (searcher.centralizer_order(&perm), None)
    };
    let normalizer_order = normalizer.then(|| searcher.normalizer_of_cyclic_order(&perm));

    let mut text = format!(
        "representative found after {} words (seed {seed})\ngroup order = {}\ncentralizer order = {full}",
        out.words_tried,
        searcher.group_order(),
    );
    if let Some(m) = &modulo {
        text.push_str(&format!("\ncentralizer order mod -1 = {m}"));
    }
    if let Some(n) = &normalizer_order {
        text.push_str(&format!("\nnormalizer of the cyclic subgroup = {n}"));
    }
    let json = json!({
        "lattice": lattice.name(),
        "order": order,
        "words_tried": out.words_tried,
        "group_order": core_json::int_to_value(searcher.group_order()),
        "centralizer": core_json::int_to_value(&full),
        "centralizer_mod_negation": modulo.as_ref().map(core_json::int_to_value),
        "normalizer_cyclic": normalizer_order.as_ref().map(core_json::int_to_value),
    });
    Ok(Report::new(json, text, seed))
}
