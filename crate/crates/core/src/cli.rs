//! `netalg` command line: `check`, `subnet`, `rank` and `dump`.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::groebner::{GbConfig, DEFAULT_STEP_BUDGET};
use crate::identifiability::{
    build_f, network_identifiability, EliminationOrder, IdentifiabilityOptions, KeepEntries,
};
use crate::informativity::{
    groebner_rank_case, informativity_of_m, max_disjoint_paths, pi_of, InformativityOptions, Method,
    RankOptions, SaturationOrder,
};
use crate::netmodel::{assemble_informativity_m, subnetwork_transform, MMatrix, NetworkSpec, SubnetMode, SubnetTransform};
use crate::oracle::{Pool, ProbeConfig, DEFAULT_POOL_MAX, DEFAULT_SEED, DEFAULT_TRIALS};
use crate::polyalg::parse_rational_constant;
use crate::report::{InputEcho, OptionsEcho, RankEcho, RunReport, SubnetEcho};

#[derive(Parser, Debug)]
#[command(name = "netalg", version, about = "Informativity and identifiability of linear dynamic networks")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Informativity and/or identifiability of a network file. Both run
    /// when neither flag is given. A file with an `identification.a_nodes`
    /// entry is analysed as that sub-network.
    Check {
        file: PathBuf,
        #[arg(long)]
        informativity: bool,
        #[arg(long)]
        identifiability: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Sub-network analysis for the nodes in `--a-nodes`.
    Subnet {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        a_nodes: Vec<String>,
        /// `nodes`, `combinations`, or `w3=nodes,w4=combinations`.
        #[arg(long)]
        mode: Option<String>,
        #[arg(long, value_enum, default_value_t = CheckWhat::All)]
        check: CheckWhat,
        #[command(flatten)]
        common: Common,
    },
    /// Generic rank of `Pi`, or the rank case at `--k`.
    Rank {
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Print an intermediate object.
    Dump {
        file: PathBuf,
        what: DumpWhat,
        /// For `basis`: the rank-case basis at this `k` instead of the
        /// identifiability basis.
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CheckWhat {
    Informativity,
    Identifiability,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DumpWhat {
    Basis,
    Pi,
    #[value(name = "F")]
    F,
    #[value(name = "M")]
    M,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// graph, groebner, numeric or all.
    #[arg(long, default_value = "all")]
    method: String,
    /// Excitation columns left out of `M` (and of the closed-loop map).
    #[arg(long, value_delimiter = ',')]
    drop_inputs: Vec<String>,
    /// Predictor rows left out of `M`.
    #[arg(long, value_delimiter = ',')]
    drop_predictor: Vec<String>,
    /// `NAME=value`, repeatable.
    #[arg(long)]
    known: Vec<String>,
    /// Rational constraint on the unknowns, repeatable.
    #[arg(long)]
    constraint: Vec<String>,
    /// Closed-loop columns to keep, by input label.
    #[arg(long, value_delimiter = ',')]
    gc_columns: Option<Vec<String>>,
    /// Re-run identifiability with the knowns resampled this many times.
    #[arg(long, default_value_t = 0)]
    resample_knowns: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,
    /// Probe modulo this prime instead of over Q.
    #[arg(long)]
    prime: Option<u64>,
    /// Reduction-step budget per Gröbner basis.
    #[arg(long, default_value_t = DEFAULT_STEP_BUDGET)]
    budget: u64,
    /// block or lex.
    #[arg(long, default_value = "block")]
    order: String,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the Gröbner bases used as evidence here.
    #[arg(long)]
    dump_basis: Option<PathBuf>,
    /// Print the JSON report instead of the text one.
    #[arg(long)]
    json: bool,
    /// Record wall-clock times in the report.
    #[arg(long)]
    timings: bool,
}

/// Runs the CLI and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    return 0;
                }
                _ => 2,
            };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceExhausted { .. } => 3,
        _ => 2,
    }
}

struct Ctx {
    spec: NetworkSpec,
    common: Common,
    method: Method,
    gb: GbConfig,
    probe: ProbeConfig,
    sat_order: SaturationOrder,
    elim_order: EliminationOrder,
    timings: BTreeMap<String, f64>,
}

impl Ctx {
    fn new(path: &Path, common: Common) -> Result<Self> {
        let src = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("cannot read {}: {e}", path.display())))?;
        let mut spec = NetworkSpec::from_json(&src)?;
        apply_knowns(&mut spec, &common.known)?;
        let method = Method::parse(&common.method)?;
        if method == Method::Graph && common.dump_basis.is_some() {
            return Err(Error::MalformedInput("--dump-basis needs a Gröbner method; --method graph computes no basis".into()));
        }
        let (sat_order, elim_order) = match common.order.as_str() {
            "block" => (SaturationOrder::Block, EliminationOrder::Block),
            "lex" => (SaturationOrder::Lex, EliminationOrder::Lex),
            o => return Err(Error::MalformedInput(format!("unknown order {o:?}; expected block or lex"))),
        };
        let probe = ProbeConfig {
            trials: common.trials,
            pool: match common.prime {
                Some(modulus) => Pool::Prime { modulus },
                None => Pool::Rational { max: DEFAULT_POOL_MAX },
            },
            seed: common.seed,
        };
        probe.check()?;
        Ok(Self {
            spec,
            gb: GbConfig {
                step_budget: common.budget,
            },
            common,
            method,
            probe,
            sat_order,
            elim_order,
            timings: BTreeMap::new(),
        })
    }

    fn info_opts(&self) -> InformativityOptions {
        InformativityOptions {
            method: self.method,
            drop_inputs: self.common.drop_inputs.clone(),
            drop_predictor: self.common.drop_predictor.clone(),
            rank: RankOptions {
                order: self.sat_order,
                gb: self.gb.clone(),
            },
            probe: self.probe.clone(),
        }
    }

    fn ident_opts(&self) -> IdentifiabilityOptions {
        IdentifiabilityOptions {
            keep: KeepEntries {
                columns: self.common.gc_columns.clone(),
                entries: None,
                drop: self.common.drop_inputs.clone(),
            },
            constraints: self.common.constraint.clone(),
            order: self.elim_order,
            gb: self.gb.clone(),
            resample_knowns: self.common.resample_knowns,
            seed: self.common.seed,
        }
    }

    fn m(&self, tr: Option<&SubnetTransform>) -> Result<MMatrix> {
        match tr {
            Some(t) => t.info_m_with(&self.spec, &self.common.drop_inputs, &self.common.drop_predictor),
            None => assemble_informativity_m(&self.spec, &self.common.drop_inputs, &self.common.drop_predictor),
        }
    }

    fn time<T>(&mut self, phase: &str, f: impl FnOnce(&Self) -> Result<T>) -> Result<T> {
        let t = Instant::now();
        let r = f(self)?;
        self.timings.insert(phase.to_string(), t.elapsed().as_secs_f64());
        Ok(r)
    }

    fn report(&self, command: &str, path: &Path, a: Option<&[String]>, mode: Option<&SubnetMode>, k: Option<usize>) -> RunReport {
        let c = &self.common;
        let options = OptionsEcho {
            method: c.method.clone(),
            drop_inputs: c.drop_inputs.clone(),
            drop_predictor: c.drop_predictor.clone(),
            knowns: self.spec.knowns.iter().map(|(k, v)| (k.clone(), v.to_string())).collect(),
            constraints: self.spec.constraints.iter().chain(&c.constraint).cloned().collect(),
            gc_columns: c.gc_columns.clone(),
            resample_knowns: c.resample_knowns,
            order: c.order.clone(),
            step_budget: c.budget,
            seed: c.seed,
            trials: c.trials,
            pool: match self.probe.pool {
                Pool::Rational { max } => format!("rational 1..={max}"),
                Pool::Prime { modulus } => format!("prime {modulus}"),
            },
            a_nodes: a.map(<[String]>::to_vec),
            mode: mode.map(mode_name),
            k,
        };
        let mut r = RunReport::new(
            command,
            InputEcho {
                path: path.display().to_string(),
                name: self.spec.name.clone(),
                digest: self.spec.digest(),
            },
            options,
        );
        r.notices = self.spec.notices.clone();
        r
    }
}

fn mode_name(m: &SubnetMode) -> String {
    match m {
        SubnetMode::MeasureBNodes => "nodes".into(),
        SubnetMode::MeasureCombinations => "combinations".into(),
        SubnetMode::Mixed(map) => map
            .iter()
            .map(|(k, v)| format!("{k}={}", if *v == crate::netmodel::MeasureMode::Node { "nodes" } else { "combinations" }))
            .collect::<Vec<_>>()
            .join(","),
    }
}

fn apply_knowns(spec: &mut NetworkSpec, knowns: &[String]) -> Result<()> {
    let names = spec.free_names();
    for kv in knowns {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| Error::MalformedInput(format!("--known {kv:?}: expected NAME=value")))?;
        let (k, v) = (k.trim(), v.trim());
        if !names.iter().any(|n| n == k) {
            return Err(Error::MalformedInput(format!("--known {k}: not a free entry of the network")));
        }
        let val = parse_rational_constant(v)?;
        match spec.knowns.iter_mut().find(|(n, _)| n == k) {
            Some(slot) => slot.1 = val,
            None => spec.knowns.push((k.to_string(), val)),
        }
    }
    Ok(())
}

fn subnet_echo(a: &[String], mode: &SubnetMode, t: &SubnetTransform) -> SubnetEcho {
    SubnetEcho {
        a_nodes: a.to_vec(),
        mode: mode_name(mode),
        identity: t.is_identity(),
        candidate_inputs: t.candidate_inputs.clone(),
        kept_inputs: t.input_map.kept.iter().map(|&i| t.candidate_inputs[i].clone()).collect(),
        ident_inputs: t.ident.labels.r.clone(),
        ident_outputs: t.ident.labels.y.clone(),
        extra_predictor_rows: t.extra_rows.iter().map(|r| r.label.clone()).collect(),
        notes: t.notes.clone(),
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32> {
    match cli.cmd {
        Cmd::Check {
            file,
            informativity,
            identifiability,
            common,
        } => {
            let ctx = Ctx::new(&file, common)?;
            let a = ctx.spec.identification.a_nodes.clone();
            let mode = ctx.spec.identification.mode.clone().unwrap_or(SubnetMode::MeasureBNodes);
            let both = !informativity && !identifiability;
            analyse(ctx, "check", &file, a, mode, informativity || both, identifiability || both, out)
        }
        Cmd::Subnet {
            file,
            a_nodes,
            mode,
            check,
            common,
        } => {
            let ctx = Ctx::new(&file, common)?;
            let mode = match mode {
                Some(m) => SubnetMode::parse(&m)?,
                None => ctx.spec.identification.mode.clone().unwrap_or(SubnetMode::MeasureBNodes),
            };
            let info = check != CheckWhat::Identifiability;
            let ident = check != CheckWhat::Informativity;
            analyse(ctx, "subnet", &file, Some(a_nodes), mode, info, ident, out)
        }
        Cmd::Rank { file, k, common } => rank(Ctx::new(&file, common)?, &file, k, out),
        Cmd::Dump { file, what, k, common } => dump(Ctx::new(&file, common)?, what, k, out),
    }
}

#[allow(clippy::too_many_arguments)]
fn analyse(
    mut ctx: Ctx,
    command: &str,
    file: &Path,
    a: Option<Vec<String>>,
    mode: SubnetMode,
    info: bool,
    ident: bool,
    out: &mut dyn Write,
) -> Result<i32> {
    let tr = match &a {
        Some(a) => Some(ctx.time("subnet", |c| subnetwork_transform(&c.spec, a, &mode))?),
        None => None,
    };
    let mut report = ctx.report(command, file, a.as_deref(), a.as_ref().map(|_| &mode), None);
    if let (Some(a), Some(t)) = (&a, &tr) {
        report.subnet = Some(subnet_echo(a, &mode, t));
    }
    let mut bases = String::new();
    if info {
        let r = ctx.time("informativity", |c| {
            let m = c.m(tr.as_ref())?;
            informativity_of_m(&m, c.spec.assumptions.input_spectrum_positive_definite, &c.info_opts())
        })?;
        if let Some(rc) = &r.rank_case {
            bases.push_str(&format!("# informativity: ideal of the {}-minors of Pi\n", rc.k));
            bases.push_str(&rc.basis.dump());
        }
        report.informativity = Some(r);
    }
    if ident {
        let r = ctx.time("identifiability", |c| {
            network_identifiability(&c.spec, a.as_deref(), &mode, &c.ident_opts()).map(|(r, _)| r)
        })?;
        if let Some(b) = &r.basis {
            bases.push_str("# identifiability: ideal of T . G_c - S\n");
            bases.push_str(&b.dump());
        }
        report.identifiability = Some(r);
    }
    finish(ctx, report, &bases, out)
}

fn finish(ctx: Ctx, mut report: RunReport, bases: &str, out: &mut dyn Write) -> Result<i32> {
    if ctx.common.timings {
        report.timings = Some(ctx.timings.clone());
    }
    report.settle();
    let json = report.to_json();
    if let Some(p) = &ctx.common.out {
        std::fs::write(p, &json).map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display())))?;
    }
    if let Some(p) = &ctx.common.dump_basis {
        std::fs::write(p, bases).map_err(|e| Error::Io(format!("cannot write {}: {e}", p.display())))?;
    }
    let text = if ctx.common.json { json } else { report.render_text() };
    out.write_all(text.as_bytes())?;
    Ok(report.outcome.exit_code)
}

fn rank(mut ctx: Ctx, file: &Path, k: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    let mut report = ctx.report("rank", file, None, None, k);
    let m = ctx.m(None)?;
    let mut bases = String::new();
    let echo = ctx.time("rank", |c| {
        let graph = matches!(c.method, Method::Graph | Method::All).then(|| max_disjoint_paths(&m).count);
        let mut echo = RankEcho {
            method: c.common.method.clone(),
            pi_shape: [m.z_rows(), m.u_cols()],
            generic_rank: graph.unwrap_or(0),
            k,
            case: None,
            degenerate_locus: Vec::new(),
            graph_count: graph,
            numeric_rank: None,
        };
        if c.method == Method::Graph {
            return Ok(echo);
        }
        let mut opts = c.info_opts();
        opts.method = c.method;
        let r = informativity_of_m(&m, true, &opts)?;
        echo.generic_rank = r.generic_rank;
        echo.numeric_rank = r.numeric.as_ref().map(|n| n.rank);
        if let Some(k) = k {
            if c.method == Method::Numeric {
                return Err(Error::MalformedInput("--k needs a Gröbner method".into()));
            }
            let pi = pi_of(&m)?;
            let case = groebner_rank_case(&pi, k, &opts.rank)?;
            echo.case = Some(format!("{:?}", case.verdict));
            echo.degenerate_locus = case.degenerate_locus.iter().map(|p| p.to_string()).collect();
            bases.push_str(&format!("# informativity: ideal of the {k}-minors of Pi\n"));
            bases.push_str(&case.basis.dump());
        } else if let Some(rc) = &r.rank_case {
            echo.case = Some(format!("{:?}", rc.verdict));
            echo.k = Some(rc.k);
            echo.degenerate_locus = rc.degenerate_locus.iter().map(|p| p.to_string()).collect();
            bases.push_str(&format!("# informativity: ideal of the {}-minors of Pi\n", rc.k));
            bases.push_str(&rc.basis.dump());
        }
        Ok(echo)
    })?;
    report.rank = Some(echo);
    finish(ctx, report, &bases, out)
}

fn dump(ctx: Ctx, what: DumpWhat, k: Option<usize>, out: &mut dyn Write) -> Result<i32> {
    let a = ctx.spec.identification.a_nodes.clone();
    let mode = ctx.spec.identification.mode.clone().unwrap_or(SubnetMode::MeasureBNodes);
    let tr = match &a {
        Some(a) => Some(subnetwork_transform(&ctx.spec, a, &mode)?),
        None => None,
    };
    let text = match what {
        DumpWhat::M => ctx.m(tr.as_ref())?.render(),
        DumpWhat::Pi => pi_of(&ctx.m(tr.as_ref())?)?.to_string(),
        DumpWhat::F => build_f(tr.as_ref().map_or(&ctx.spec, |t| &t.ident))?.render(),
        DumpWhat::Basis => match k {
            Some(k) => {
                let pi = pi_of(&ctx.m(tr.as_ref())?)?;
                let opts = ctx.info_opts();
                groebner_rank_case(&pi, k, &opts.rank)?.basis.dump()
            }
            None => {
                let (r, _) = network_identifiability(&ctx.spec, a.as_deref(), &mode, &ctx.ident_opts())?;
                r.basis.map(|b| b.dump()).unwrap_or_default()
            }
        },
    };
    out.write_all(text.as_bytes())?;
    if !text.ends_with('\n') {
        out.write_all(b"\n")?;
    }
    Ok(0)
}
