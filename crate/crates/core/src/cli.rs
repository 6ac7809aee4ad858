//! Command-line front end.
//!
//! Exit codes: 0 on success, 2 when input fails validation or a `verify`
//! check fails, 3 when a solver refuses an instance above its size limit or
//! search budget.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::approx::{amsm, amsm_ins_bound, amsm_step_bound, asa, asa_ins_bound};
use crate::error::{Error, Result};
use crate::exact::{
    max_3dm_with_budget, msm_opt, mss_opt, psa_opt, scan_all_marriages, Mode, DEFAULT_DM_BUDGET, DEFAULT_MSM_LIMIT,
    DEFAULT_MSS_LIMIT, DEFAULT_PSA_MSM_LIMIT, DEFAULT_PSA_MSS_LIMIT,
};
use crate::format::{read_instance, read_solution, write_instance, write_solution, Instance, Solution};
use crate::generators::{
    embed_3dm, gen_adversarial, gen_gadget2, gen_planted_dm, gen_random, gen_random_psa, lift_gsm_to_psa,
};
use crate::instance::{GsmInstance, PsaInstance};
use crate::reductions::{decode_matching_to_assignment, sat_to_3dm3, ReductionLayout};
use crate::stability::{stability_report_gsm, stability_report_psa, StabilityReport};

#[derive(Parser, Debug)]
#[command(name = "tristable", version, about = "Three-gender stable marriage and three-person stable assignment tools")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate an instance.
    Gen(GenArgs),
    /// Count stable and unstable triples of a solution.
    Stab {
        instance: PathBuf,
        solution: PathBuf,
        /// Also print every unstable triple.
        #[arg(long)]
        list: bool,
    },
    /// Greedy approximation for 3GSM.
    Amsm {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Greedy approximation for 3PSA.
    Asa {
        instance: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive optimum (3GSM, 3PSA) or maximum matching (3DM).
    Exact {
        instance: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Msm)]
        mode: ModeArg,
        /// Size limit: n for 3GSM, players for 3PSA, search nodes for 3DM.
        #[arg(long)]
        limit: Option<u64>,
        /// Ignore the size limit.
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Reductions between problems.
    Reduce {
        #[command(subcommand)]
        which: ReduceCommand,
    },
    /// Run algorithms over generated families and emit one record per run.
    Bench(BenchArgs),
    /// Check the guarantees on a generated family.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Msm,
    Mss,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Msm => Mode::Msm,
            ModeArg::Mss => Mode::Mss,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Gadget2,
    Adversarial,
    Random,
    RandomPsa,
    PlantedDm,
    Embed,
    Lift,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    pub kind: GenKind,
    /// Players per gender (edges per part for planted-dm).
    #[arg(long, default_value_t = 2)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Extra random edges for planted-dm.
    #[arg(long, default_value_t = 0)]
    pub extra: usize,
    /// Source instance for embed and lift.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    /// For embed: also write the witness marriage of a perfect matching, if one exists.
    #[arg(long)]
    pub witness: Option<PathBuf>,
    /// Write JSON instead of the text format.
    #[arg(long)]
    pub json: bool,
    #[arg(short, long)]
    pub output: PathBuf,
}

#[derive(Subcommand, Debug)]
pub enum ReduceCommand {
    /// 3SAT-B formula to 3DM-3.
    Sat3dm {
        formula: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
        /// Write the labelled vertex and edge listing (JSON).
        #[arg(long)]
        layout: Option<PathBuf>,
    },
    /// Read a truth assignment back from a 3DM matching of a reduced instance.
    Decode { formula: PathBuf, layout: PathBuf, matching: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    Gadget2,
    Adversarial,
    Random,
    RandomPsa,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    #[arg(long, value_enum)]
    pub family: Family,
    /// Sizes to run, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![4])]
    pub n: Vec<usize>,
    /// First seed.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Number of consecutive seeds (random families only).
    #[arg(long, default_value_t = 1)]
    pub seeds: u64,
    /// Also run the exhaustive solver where the size limit allows.
    #[arg(long)]
    pub exact: bool,
    /// Size limit for the exhaustive solver.
    #[arg(long)]
    pub limit: Option<usize>,
    /// Run the exhaustive solver regardless of size.
    #[arg(long)]
    pub force: bool,
    /// Record wall-clock time. Off by default so records are reproducible.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyFamily {
    Gadget2,
    Adversarial,
    Random,
    Embed,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum)]
    pub family: VerifyFamily,
    #[arg(long, default_value_t = 4)]
    pub n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 5)]
    pub seeds: u64,
}

/// One (instance, algorithm) run.
#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Record {
    pub family: String,
    pub n: usize,
    pub seed: Option<u64>,
    pub algorithm: String,
    pub stab: u64,
    pub ins: u64,
    pub bound: Option<u64>,
    pub runtime_ms: Option<f64>,
}

const CSV_HEADER: &str = "family,n,seed,algorithm,stab,ins,bound,runtimeMs";

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map_or(String::new(), T::to_string)
}

fn render(records: &[Record], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Json => {
            for r in records {
                writeln!(out, "{}", serde_json::to_string(r).unwrap()).unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "{CSV_HEADER}").unwrap();
            for r in records {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    r.family,
                    r.n,
                    opt(&r.seed),
                    r.algorithm,
                    r.stab,
                    r.ins,
                    opt(&r.bound),
                    opt(&r.runtime_ms)
                )
                .unwrap();
            }
        }
        Format::Table => {
            for r in records {
                write!(out, "{} n={}", r.family, r.n).unwrap();
                if let Some(s) = r.seed {
                    write!(out, " seed={s}").unwrap();
                }
                write!(out, " {} stab={} ins={}", r.algorithm, r.stab, r.ins).unwrap();
                if let Some(b) = r.bound {
                    write!(out, " bound={b}").unwrap();
                }
                if let Some(t) = r.runtime_ms {
                    write!(out, " runtimeMs={t:.3}").unwrap();
                }
                out.push('\n');
            }
        }
    }
    out
}

/// Output of one command: text for stdout and the exit code.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::InstanceTooLarge { .. } | Error::Timeout(_) => 3,
        _ => 2,
    }
}

fn file_label(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |s| s.to_string_lossy().into_owned())
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents)?;
    Ok(())
}

fn expect_gsm(inst: Instance, path: &Path) -> Result<GsmInstance> {
    match inst {
        Instance::Gsm(g) => Ok(g),
        other => Err(Error::DimensionMismatch(format!("{} holds a {} instance, expected 3GSM", path.display(), other.kind()))),
    }
}

fn record(family: &str, n: usize, seed: Option<u64>, algorithm: &str, report: &StabilityReport, bound: Option<u64>) -> Record {
    Record {
        family: family.to_string(),
        n,
        seed,
        algorithm: algorithm.to_string(),
        stab: report.stab,
        ins: report.ins,
        bound,
        runtime_ms: None,
    }
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Gen(args) => gen(args),
        Command::Stab { instance, solution, list } => {
            let inst = read_instance(&instance)?;
            let sol = read_solution(&solution)?;
            let (n, report) = match (inst, sol) {
                (Instance::Gsm(g), Solution::Marriage(s)) => {
                    if s.n() != g.n() {
                        return Err(Error::DimensionMismatch(format!("marriage over n={} for instance n={}", s.n(), g.n())));
                    }
                    (g.n(), stability_report_gsm(&g, &s, list))
                }
                (Instance::Psa(p), Solution::Matching(s)) => {
                    if s.players() != p.players() {
                        return Err(Error::DimensionMismatch(format!(
                            "matching over {} players for instance with {}",
                            s.players(),
                            p.players()
                        )));
                    }
                    (p.n(), stability_report_psa(&p, &s, list))
                }
                (i, _) => {
                    return Err(Error::DimensionMismatch(format!("solution kind does not fit a {} instance", i.kind())))
                }
            };
            let mut out = render(&[record(&file_label(&instance), n, None, "stab", &report, None)], format);
            for t in report.unstable.iter().flatten() {
                writeln!(out, "unstable {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).unwrap();
            }
            Ok(Outcome::ok(out))
        }
        Command::Amsm { instance, output } => {
            let g = expect_gsm(read_instance(&instance)?, &instance)?;
            let res = amsm(&g);
            if let Some(path) = output {
                write_file(&path, &write_solution(&Solution::Marriage(res.marriage.as_submarriage().clone())))?;
            }
            let r = record(&file_label(&instance), g.n(), None, "amsm", &res.report, Some(amsm_ins_bound(g.n())));
            Ok(Outcome::ok(render(&[r], format)))
        }
        Command::Asa { instance, output } => {
            let p = match read_instance(&instance)? {
                Instance::Psa(p) => p,
                Instance::Gsm(g) => lift_gsm_to_psa(&g),
                other => return Err(Error::DimensionMismatch(format!("asa needs a 3PSA instance, got {}", other.kind()))),
            };
            let res = asa(&p);
            if let Some(path) = output {
                write_file(&path, &write_solution(&Solution::Matching(res.matching.as_submatching().clone())))?;
            }
            let r = record(&file_label(&instance), p.n(), None, "asa", &res.report, Some(asa_ins_bound(p.n())));
            Ok(Outcome::ok(render(&[r], format)))
        }
        Command::Exact { instance, mode, limit, force, output } => exact(&instance, mode, limit, force, output, format),
        Command::Reduce { which } => reduce(which),
        Command::Bench(args) => bench(args, format),
        Command::Verify(args) => verify(args),
    }
}

fn gen(args: GenArgs) -> Result<Outcome> {
    let read_input = || -> Result<Instance> {
        let path = args
            .input
            .as_ref()
            .ok_or_else(|| Error::DimensionMismatch(format!("gen {:?} needs --in <file>", args.kind)))?;
        read_instance(path)
    };
    let mut note = String::new();
    let inst = match args.kind {
        GenKind::Gadget2 => Instance::Gsm(gen_gadget2()),
        GenKind::Adversarial => Instance::Gsm(gen_adversarial(args.n)?),
        GenKind::Random => Instance::Gsm(gen_random(args.n, args.seed)),
        GenKind::RandomPsa => Instance::Psa(gen_random_psa(3 * args.n, args.seed)?),
        GenKind::PlantedDm => Instance::Dm(gen_planted_dm(args.n, args.extra, args.seed).0),
        GenKind::Embed => {
            let Instance::Dm(dm) = read_input()? else {
                return Err(Error::DimensionMismatch("embed needs a 3DM instance".into()));
            };
            let emb = embed_3dm(&dm)?;
            if let Some(path) = &args.witness {
                let best = max_3dm_with_budget(&dm, DEFAULT_DM_BUDGET)?;
                if best.size() == dm.m() {
                    let marriage = emb.witness(&best.edges)?;
                    write_file(path, &write_solution(&Solution::Marriage(marriage.into_submarriage())))?;
                    writeln!(note, "witness written to {}", path.display()).unwrap();
                } else {
                    writeln!(note, "no perfect matching (maximum {} of {}); no witness written", best.size(), dm.m())
                        .unwrap();
                }
            }
            Instance::Gsm(emb.instance)
        }
        GenKind::Lift => {
            let Instance::Gsm(g) = read_input()? else {
                return Err(Error::DimensionMismatch("lift needs a 3GSM instance".into()));
            };
            Instance::Psa(lift_gsm_to_psa(&g))
        }
    };
    let text = if args.json { crate::format::instance_to_json(&inst) } else { write_instance(&inst) };
    write_file(&args.output, &text)?;
    Ok(Outcome::ok(note))
}

fn exact(
    path: &Path,
    mode: ModeArg,
    limit: Option<u64>,
    force: bool,
    output: Option<PathBuf>,
    format: Format,
) -> Result<Outcome> {
    let label = file_label(path);
    let size_limit = |default: usize| if force { usize::MAX } else { limit.map_or(default, |l| l as usize) };
    let (records, sol) = match read_instance(path)? {
        Instance::Gsm(g) => match mode {
            ModeArg::Msm => {
                let best = msm_opt(&g, size_limit(DEFAULT_MSM_LIMIT))?;
                let report = stability_report_gsm(&g, best.marriage.as_submarriage(), false);
                (
                    vec![record(&label, g.n(), None, "exact-msm", &report, None)],
                    Solution::Marriage(best.marriage.into_submarriage()),
                )
            }
            ModeArg::Mss => {
                let best = mss_opt(&g, size_limit(DEFAULT_MSS_LIMIT))?;
                let report = stability_report_gsm(&g, &best.submarriage, false);
                let mut out = render(&[record(&label, g.n(), None, "exact-mss", &report, None)], format);
                writeln!(out, "size={}", best.size).unwrap();
                if let Some(p) = output {
                    write_file(&p, &write_solution(&Solution::Marriage(best.submarriage)))?;
                }
                return Ok(Outcome::ok(out));
            }
        },
        Instance::Psa(p) => {
            let default = if mode == ModeArg::Msm { DEFAULT_PSA_MSM_LIMIT } else { DEFAULT_PSA_MSS_LIMIT };
            let best = psa_opt(&p, mode.into(), size_limit(default))?;
            let report = stability_report_psa(&p, &best.submatching, false);
            let algorithm = if mode == ModeArg::Msm { "exact-msm" } else { "exact-mss" };
            let mut out = render(&[record(&label, p.n(), None, algorithm, &report, None)], format);
            if mode == ModeArg::Mss {
                writeln!(out, "size={}", best.value).unwrap();
            }
            if let Some(path) = output {
                write_file(&path, &write_solution(&Solution::Matching(best.submatching)))?;
            }
            return Ok(Outcome::ok(out));
        }
        Instance::Dm(dm) => {
            let budget = if force { u64::MAX } else { limit.unwrap_or(DEFAULT_DM_BUDGET) };
            let best = max_3dm_with_budget(&dm, budget)?;
            if let Some(p) = output {
                let edges = best.edges.iter().map(|&e| dm.edges()[e]).collect();
                write_file(&p, &write_solution(&Solution::Dm { m: dm.m(), edges }))?;
            }
            let out = match format {
                Format::Json => format!(
                    "{}\n",
                    serde_json::json!({"family": label, "m": dm.m(), "algorithm": "max-3dm",
                        "matching": best.size(), "uncovered": 3 * (dm.m() - best.size())})
                ),
                Format::Csv => format!(
                    "family,m,algorithm,matching,uncovered\n{label},{},max-3dm,{},{}\n",
                    dm.m(),
                    best.size(),
                    3 * (dm.m() - best.size())
                ),
                Format::Table => {
                    format!("{label} m={} max-3dm matching={} uncovered={}\n", dm.m(), best.size(), 3 * (dm.m() - best.size()))
                }
            };
            return Ok(Outcome::ok(out));
        }
        Instance::Sat(_) => return Err(Error::DimensionMismatch("exact does not take formulas; reduce them first".into())),
    };
    if let Some(p) = output {
        write_file(&p, &write_solution(&sol))?;
    }
    Ok(Outcome::ok(render(&records, format)))
}

fn reduce(which: ReduceCommand) -> Result<Outcome> {
    match which {
        ReduceCommand::Sat3dm { formula, output, layout } => {
            let Instance::Sat(f) = read_instance(&formula)? else {
                return Err(Error::DimensionMismatch("sat3dm needs a 3SATB formula".into()));
            };
            let (dm, lay) = sat_to_3dm3(&f)?;
            write_file(&output, &write_instance(&Instance::Dm(dm.clone())))?;
            if let Some(path) = layout {
                write_file(&path, &serde_json::to_string_pretty(&lay)?)?;
            }
            Ok(Outcome::ok(format!(
                "m={} edges={} rings={} vertices={}\n",
                dm.m(),
                dm.edges().len(),
                lay.rings,
                lay.vertices.len()
            )))
        }
        ReduceCommand::Decode { formula, layout, matching } => {
            let Instance::Sat(f) = read_instance(&formula)? else {
                return Err(Error::DimensionMismatch("decode needs a 3SATB formula".into()));
            };
            let lay: ReductionLayout = serde_json::from_str(&std::fs::read_to_string(&layout)?)?;
            let Solution::Dm { edges, .. } = read_solution(&matching)? else {
                return Err(Error::DimensionMismatch("decode needs a 3DM-MATCHING file".into()));
            };
            let by_triple: std::collections::HashMap<[usize; 3], usize> = lay
                .edges
                .iter()
                .enumerate()
                .map(|(id, e)| (e.vertices.map(|v| lay.vertices[v].index), id))
                .collect();
            let ids = edges
                .iter()
                .map(|e| {
                    by_triple
                        .get(e)
                        .copied()
                        .ok_or_else(|| Error::InvalidDm(format!("edge {:?} is not in the layout", e.map(|v| v + 1))))
                })
                .collect::<Result<Vec<_>>>()?;
            let a = decode_matching_to_assignment(&f, &lay, &ids)?;
            let lits: Vec<String> =
                a.iter().enumerate().map(|(v, &t)| format!("{}{}", if t { "" } else { "-" }, v + 1)).collect();
            Ok(Outcome::ok(format!("assignment {}\nsatisfied={} of {}\n", lits.join(" "), f.satisfied(&a), f.clauses().len())))
        }
    }
}

fn bench(args: BenchArgs, format: Format) -> Result<Outcome> {
    let mut records = Vec::new();
    let timed = |rec: &mut Record, start: Instant| {
        if args.timing {
            rec.runtime_ms = Some(start.elapsed().as_secs_f64() * 1e3);
        }
    };
    for &n in &args.n {
        let seeds: Vec<Option<u64>> = match args.family {
            Family::Random | Family::RandomPsa => (args.seed..args.seed + args.seeds).map(Some).collect(),
            _ => vec![None],
        };
        for seed in seeds {
            let name = format!("{:?}", args.family).to_lowercase();
            match args.family {
                Family::RandomPsa => {
                    let p: PsaInstance = gen_random_psa(3 * n, seed.unwrap())?;
                    let t = Instant::now();
                    let res = asa(&p);
                    let mut r = record(&name, n, seed, "asa", &res.report, Some(asa_ins_bound(n)));
                    timed(&mut r, t);
                    records.push(r);
                    if args.exact {
                        let limit = if args.force { usize::MAX } else { args.limit.unwrap_or(DEFAULT_PSA_MSM_LIMIT) };
                        if 3 * n <= limit {
                            let t = Instant::now();
                            let best = psa_opt(&p, Mode::Msm, limit)?;
                            let report = stability_report_psa(&p, &best.submatching, false);
                            let mut r = record(&name, n, seed, "exact-msm", &report, None);
                            timed(&mut r, t);
                            records.push(r);
                        }
                    }
                }
                _ => {
                    let g = match args.family {
                        Family::Gadget2 => gen_gadget2(),
                        Family::Adversarial => gen_adversarial(n)?,
                        _ => gen_random(n, seed.unwrap()),
                    };
                    let n = g.n();
                    let t = Instant::now();
                    let res = amsm(&g);
                    let mut r = record(&name, n, seed, "amsm", &res.report, Some(amsm_ins_bound(n)));
                    timed(&mut r, t);
                    records.push(r);
                    if args.exact {
                        let limit = if args.force { usize::MAX } else { args.limit.unwrap_or(DEFAULT_MSM_LIMIT) };
                        if n <= limit {
                            let t = Instant::now();
                            let best = msm_opt(&g, limit)?;
                            let report = stability_report_gsm(&g, best.marriage.as_submarriage(), false);
                            let mut r = record(&name, n, seed, "exact-msm", &report, None);
                            timed(&mut r, t);
                            records.push(r);
                        }
                    }
                }
            }
        }
    }
    Ok(Outcome::ok(render(&records, format)))
}

fn check(out: &mut String, failures: &mut usize, ok: bool, what: String) {
    writeln!(out, "{} {what}", if ok { "PASS" } else { "FAIL" }).unwrap();
    if !ok {
        *failures += 1;
    }
}

fn verify(args: VerifyArgs) -> Result<Outcome> {
    let mut out = String::new();
    let mut failures = 0;
    match args.family {
        VerifyFamily::Gadget2 | VerifyFamily::Adversarial => {
            let (g, need) = if args.family == VerifyFamily::Gadget2 {
                (gen_gadget2(), 1)
            } else {
                let n = args.n as u64;
                (gen_adversarial(args.n)?, (n * n * n).div_ceil(128))
            };
            let scan = scan_all_marriages(&g, DEFAULT_MSM_LIMIT)?;
            check(
                &mut out,
                &mut failures,
                scan.min_ins >= need,
                format!(
                    "n={} min-ins={} >= {need} over {} marriages",
                    g.n(),
                    scan.min_ins,
                    scan.enumerated
                ),
            );
        }
        VerifyFamily::Random => {
            for seed in args.seed..args.seed + args.seeds {
                let g = gen_random(args.n, seed);
                let res = amsm(&g);
                let steps_ok = res.steps.iter().all(|s| s.stable_set >= amsm_step_bound(s.remaining));
                check(&mut out, &mut failures, steps_ok, format!("n={} seed={seed} every step meets its stable-set bound", args.n));
                let bound = amsm_ins_bound(args.n);
                check(
                    &mut out,
                    &mut failures,
                    res.report.ins <= bound && res.report.is_conserved(),
                    format!("n={} seed={seed} amsm ins={} <= {bound}", args.n, res.report.ins),
                );
                if args.n <= 5 {
                    let best = msm_opt(&g, DEFAULT_MSM_LIMIT)?;
                    check(
                        &mut out,
                        &mut failures,
                        res.report.stab <= best.stab,
                        format!("n={} seed={seed} amsm stab={} <= msm={}", args.n, res.report.stab, best.stab),
                    );
                }
            }
        }
        VerifyFamily::Embed => {
            for seed in args.seed..args.seed + args.seeds {
                let (dm, planted) = gen_planted_dm(args.n, args.n, seed);
                let emb = embed_3dm(&dm)?;
                let marriage = emb.witness(&planted)?;
                let report = stability_report_gsm(&emb.instance, marriage.as_submarriage(), false);
                let players = 6 * args.n as u64;
                check(
                    &mut out,
                    &mut failures,
                    report.ins == 0 && report.stab == players.pow(3),
                    format!("m={} seed={seed} witness ins={} stab={}", args.n, report.ins, report.stab),
                );
            }
        }
    }
    Ok(Outcome { stdout: out, code: if failures == 0 { 0 } else { 2 } })
}

/// Parses `argv`, builds the worker pool and runs the command, printing its
/// output. Returns the process exit code.
pub fn main_with_args(argv: Vec<String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    if let Some(threads) = std::env::var("TRISTABLE_THREADS").ok().and_then(|s| s.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads.max(1)).build_global();
    }
    match run(cli) {
        Ok(o) => {
            print!("{}", o.stdout);
            o.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

