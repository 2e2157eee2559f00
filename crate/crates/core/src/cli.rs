//! Command-line front end. `run` parses arguments, executes one command and
//! returns the process exit status.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, ErrorClass};
use crate::fixpoint::{build_system, kleene_gfp, kleene_lfp, solve_game, Fixpoint, SolveReport, SolverConfig};
use crate::game::io::{parse_game_with, Assignment};
use crate::game::{
    acyclic_valuation, check_separating, dominant_flags, enumerate_strategies, strategy_value, truncate, validate_game,
    verify_counting_bisim, BasicValuation, Boundary, EnumerateOptions, GameGraph, Player, PosId, SeparationMode,
    ValueMode,
};
use crate::logic::{fo_eval, game_valuation, parse_formula, parse_interpretation, poslfp_eval_direct};
use crate::poly::Token;
use crate::semiring::{check_declared_laws, check_law, Law, Semiring, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_SEMANTIC: i32 = 3;
pub const EXIT_NO_CONVERGENCE: i32 = 4;

/// Header line of structured reports.
pub const REPORT_HEADER: &str = "gameprov-report v1";

#[derive(Parser, Debug)]
#[command(
    name = "gameprov",
    version,
    about = "Semiring provenance for games and fixed-point logic"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Value every position of a game.
    EvalGame(EvalGameArgs),
    /// Evaluate a sentence under a semiring interpretation.
    EvalFormula(EvalFormulaArgs),
    /// Print the equation system of a game and solve it.
    SolveSystem(SolveArgs),
    /// List the strategies from a position with values and dominance flags.
    Census(CensusArgs),
    /// Law, structure, separation and bisimulation checks.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Args, Debug, Clone)]
struct SemiringArgs {
    /// Semiring selector, e.g. `natpoly`, `sorpinf`, `series:4`, `minmax:lo,hi`.
    #[arg(long, default_value = "natpoly")]
    semiring: String,
    /// Truncation degree for `series` and `seriesdual`.
    #[arg(long)]
    trunc_degree: Option<u32>,
}

#[derive(Args, Debug, Clone)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FixArg {
    /// Backward induction when acyclic, least fixed point otherwise.
    Auto,
    Acyclic,
    Mu,
    Nu,
}

#[derive(Args, Debug)]
struct EvalGameArgs {
    game: PathBuf,
    #[command(flatten)]
    semiring: SemiringArgs,
    #[arg(long, value_enum, default_value_t = FixArg::Auto)]
    fixpoint: FixArg,
    #[arg(long, default_value = "0", value_parser = parse_player)]
    player: Player,
    #[arg(long)]
    max_iter: Option<usize>,
    /// Token assignment `tok=value`. With a polynomial semiring the results
    /// are specialized into `--into`; otherwise tokens in the game file are
    /// read through the assignment.
    #[arg(long = "assign", value_name = "TOK=VALUE")]
    assign: Vec<String>,
    /// Target semiring of post-hoc specialization.
    #[arg(long, default_value = "natinf")]
    into: String,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Model-checking game valuation.
    Game,
    /// Compositional evaluation with Kleene iteration for fixed points.
    Direct,
}

#[derive(Args, Debug)]
struct EvalFormulaArgs {
    /// File holding the sentence.
    formula: Option<PathBuf>,
    /// The sentence itself, instead of a file.
    #[arg(long, conflicts_with = "formula")]
    expr: Option<String>,
    /// Interpretation file.
    #[arg(long)]
    interp: PathBuf,
    #[command(flatten)]
    semiring: SemiringArgs,
    /// Unlisted literals whose complement is listed as 0 default to 1.
    #[arg(long)]
    model_default: bool,
    #[arg(long, default_value = "0", value_parser = parse_player)]
    player: Player,
    #[arg(long, value_enum, default_value_t = Method::Game)]
    method: Method,
    /// Also print the value of every game position.
    #[arg(long)]
    positions: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SolveArgs {
    game: PathBuf,
    #[command(flatten)]
    semiring: SemiringArgs,
    #[arg(long, value_enum, default_value_t = SolveFix::Mu)]
    fixpoint: SolveFix,
    #[arg(long, default_value = "0", value_parser = parse_player)]
    player: Player,
    #[arg(long)]
    max_iter: Option<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SolveFix {
    Mu,
    Nu,
}

#[derive(Args, Debug)]
struct CensusArgs {
    game: PathBuf,
    /// Starting position.
    #[arg(long)]
    from: String,
    #[command(flatten)]
    semiring: SemiringArgs,
    #[arg(long, default_value = "0", value_parser = parse_player)]
    player: Player,
    /// Boundary of the truncation used on cyclic games: mu cuts to 0, nu to 1.
    #[arg(long, value_enum, default_value_t = SolveFix::Mu)]
    fixpoint: SolveFix,
    /// Truncation depth for cyclic games (default: number of positions).
    #[arg(long)]
    depth: Option<usize>,
    /// Largest number of strategies listed.
    #[arg(long, default_value_t = 10_000)]
    max_count: usize,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Subcommand, Debug)]
enum CheckCommand {
    /// Check the declared laws (or the named ones) on the sample set.
    Laws {
        #[command(flatten)]
        semiring: SemiringArgs,
        /// Law to check, declared or not; repeatable.
        #[arg(long)]
        law: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Structural report on a game file.
    Game {
        game: PathBuf,
        /// Roots for the reachability report (default: positions without predecessors).
        #[arg(long)]
        from: Vec<String>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Whether the valuations of both players are separating.
    Separation {
        game: PathBuf,
        #[command(flatten)]
        semiring: SemiringArgs,
        #[arg(long, value_enum, default_value_t = SepArg::Separating)]
        mode: SepArg,
        /// Only check terminal positions.
        #[arg(long)]
        terminals: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a counting bisimulation between two games.
    Bisim {
        left: PathBuf,
        right: PathBuf,
        /// Related pairs `a=b`, repeatable or comma separated.
        #[arg(long, value_delimiter = ',')]
        relation: Vec<String>,
        #[command(flatten)]
        semiring: SemiringArgs,
        /// Also require equal terminal and move values for both players.
        #[arg(long)]
        values: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum SepArg {
    Separating,
    Weak,
    Strong,
}

fn parse_player(s: &str) -> Result<Player, String> {
    s.parse::<u8>()
        .ok()
        .and_then(Player::from_index)
        .ok_or_else(|| format!("expected 0 or 1, found `{s}`"))
}

/// Report lines, rendered as `name: value` text or as a structured report.
struct Report {
    command: &'static str,
    meta: Vec<(String, String)>,
    rows: Vec<(String, String)>,
}

impl Report {
    fn new(command: &'static str) -> Self {
        Report {
            command,
            meta: Vec::new(),
            rows: Vec::new(),
        }
    }

    fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    fn row(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.rows.push((key.into(), value.into()));
    }

    fn render(&self, format: Format) -> String {
        let mut s = String::new();
        match format {
            Format::Text => {
                for (k, v) in &self.rows {
                    let _ = writeln!(s, "{k}: {v}");
                }
            }
            Format::Structured => {
                let _ = writeln!(s, "{REPORT_HEADER}");
                let _ = writeln!(s, "command: {}", self.command);
                for (k, v) in &self.meta {
                    let _ = writeln!(s, "{k}: {v}");
                }
                for (k, v) in &self.rows {
                    let _ = writeln!(s, "row {k}: {v}");
                }
            }
        }
        s
    }
}

/// Runs the command line `args` (program name first), writing the report to
/// `out` and diagnostics to `err`.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok((text, ok)) => {
            let _ = out.write_all(text.as_bytes());
            if ok {
                EXIT_OK
            } else {
                let _ = writeln!(err, "check failed");
                EXIT_SEMANTIC
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    if e.downcast_ref::<Usage>().is_some() {
        return EXIT_USAGE;
    }
    match e.chain().find_map(|c| c.downcast_ref::<Error>()) {
        Some(err) => match err.class() {
            ErrorClass::Parse => EXIT_PARSE,
            ErrorClass::Semantic => EXIT_SEMANTIC,
            ErrorClass::NoConvergence => EXIT_NO_CONVERGENCE,
        },
        None => EXIT_USAGE,
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

fn usage(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(Usage(msg.into()))
}

fn execute(cmd: Command) -> anyhow::Result<(String, bool)> {
    match cmd {
        Command::EvalGame(a) => eval_game(a).map(|s| (s, true)),
        Command::EvalFormula(a) => eval_formula(a).map(|s| (s, true)),
        Command::SolveSystem(a) => solve_system(a).map(|s| (s, true)),
        Command::Census(a) => census(a).map(|s| (s, true)),
        Command::Check(c) => match check(c) {
            Ok(s) => Ok((s, true)),
            Err(e) => match e.downcast::<Failed>() {
                Ok(Failed(s)) => Ok((s, false)),
                Err(e) => Err(e),
            },
        },
    }
}

/// A check that ran to completion but did not hold; carries the report.
#[derive(Debug, thiserror::Error)]
#[error("check failed")]
struct Failed(String);

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn semiring(args: &SemiringArgs) -> anyhow::Result<Semiring> {
    let selector = match args.trunc_degree {
        None => args.semiring.clone(),
        Some(d) => {
            let name = args.semiring.trim();
            match name.split_once(':') {
                None if name == "series" || name == "seriesdual" => format!("{name}:{d}"),
                Some((n, p)) if (n == "series" || n == "seriesdual") && p.trim() == d.to_string() => name.to_string(),
                _ => return Err(usage(format!("--trunc-degree does not apply to semiring `{name}`"))),
            }
        }
    };
    Semiring::from_name(&selector).map_err(|e| usage(e.to_string()))
}

fn solver_config(n: usize, max_iter: Option<usize>) -> SolverConfig {
    let mut cfg = SolverConfig::for_size(n);
    if let Some(m) = max_iter {
        cfg.max_iterations = m;
    }
    cfg
}

fn parse_assignments(items: &[String], sr: &Semiring) -> anyhow::Result<Assignment> {
    let mut out = BTreeMap::new();
    for item in items {
        let (tok, val) = item
            .split_once('=')
            .ok_or_else(|| usage(format!("expected TOK=VALUE, found `{item}`")))?;
        let token = Token::parse(tok.trim()).ok_or_else(|| usage(format!("bad token `{tok}`")))?;
        out.insert(token, sr.parse_value(val.trim())?);
    }
    Ok(out)
}

fn load_game(path: &Path, sr: &Semiring, assignment: &Assignment) -> anyhow::Result<(GameGraph, [BasicValuation; 2])> {
    let text = read(path)?;
    parse_game_with(&text, sr, assignment).with_context(|| format!("in {}", path.display()))
}

fn position(g: &GameGraph, name: &str) -> anyhow::Result<PosId> {
    g.position(name)
        .ok_or_else(|| usage(format!("no position named `{name}`")))
}

fn fix_meta(r: &mut Report, rep: &SolveReport) {
    r.meta("iterations", rep.iterations);
    r.meta("saturated", rep.saturated);
    if rep.saturated {
        r.meta("threshold", rep.threshold);
    }
    r.meta("verified", rep.verified);
}

fn eval_game(a: EvalGameArgs) -> anyhow::Result<String> {
    let sr = semiring(&a.semiring)?;
    let post_hoc = sr.poly_kind().is_some() && !a.assign.is_empty();
    let target = if post_hoc {
        Some(Semiring::from_name(&a.into).map_err(|e| usage(e.to_string()))?)
    } else {
        None
    };
    let assignment = parse_assignments(&a.assign, target.as_ref().unwrap_or(&sr))?;
    let pre_hoc = if post_hoc {
        Assignment::new()
    } else {
        assignment.clone()
    };
    let (g, vals) = load_game(&a.game, &sr, &pre_hoc)?;
    let basic = &vals[a.player.index() as usize];

    let mut r = Report::new("eval-game");
    r.meta("semiring", sr.name());
    r.meta("player", a.player);
    let mode = match a.fixpoint {
        FixArg::Auto if g.is_acyclic() => FixArg::Acyclic,
        FixArg::Auto => FixArg::Mu,
        m => m,
    };
    let values = match mode {
        FixArg::Acyclic => {
            r.meta("fixpoint", "acyclic");
            acyclic_valuation(&g, basic)?
        }
        m => {
            let fix = if m == FixArg::Nu { Fixpoint::Nu } else { Fixpoint::Mu };
            r.meta("fixpoint", if fix == Fixpoint::Nu { "nu" } else { "mu" });
            let rep = solve_game(&g, basic, fix, Some(solver_config(g.len(), a.max_iter)))?;
            fix_meta(&mut r, &rep);
            rep.values
        }
    };
    match &target {
        None => {
            for v in g.positions() {
                r.row(g.name(v), sr.format(&values[v]));
            }
        }
        Some(t) => {
            r.meta("into", t.name());
            for (tok, val) in &assignment {
                r.meta(&format!("assign {tok}"), t.format(val));
            }
            for v in g.positions() {
                let p = values[v].as_poly().expect("polynomial semiring");
                let s = p.specialize(t, |tok| assignment.get(tok).cloned())?;
                r.row(g.name(v), t.format(&s));
            }
        }
    }
    Ok(r.render(a.output.format))
}

fn eval_formula(a: EvalFormulaArgs) -> anyhow::Result<String> {
    let sr = semiring(&a.semiring)?;
    let text = match (&a.formula, &a.expr) {
        (Some(p), None) => read(p)?,
        (None, Some(e)) => e.clone(),
        _ => return Err(usage("give a formula file or --expr")),
    };
    let f = parse_formula(&text)?;
    let mut pi = parse_interpretation(&read(&a.interp)?, &sr).with_context(|| format!("in {}", a.interp.display()))?;
    pi.set_model_default(a.model_default);

    let mut r = Report::new("eval-formula");
    r.meta("semiring", sr.name());
    r.meta("formula", &f);
    match a.method {
        Method::Game => {
            r.meta("method", "game");
            r.meta("player", a.player);
            let (mc, values) = game_valuation(&pi, &f, a.player)?;
            r.meta("positions", mc.game.len());
            r.row("value", sr.format(&values[mc.root]));
            if a.positions {
                for v in mc.game.positions() {
                    r.row(mc.game.name(v), sr.format(&values[v]));
                }
            }
        }
        Method::Direct => {
            if a.positions {
                return Err(usage("--positions requires --method game"));
            }
            r.meta("method", "direct");
            let value = if f.is_first_order() {
                fo_eval(&pi, &f)?
            } else {
                poslfp_eval_direct(&pi, &f)?
            };
            r.row("value", sr.format(&value));
        }
    }
    Ok(r.render(a.output.format))
}

fn solve_system(a: SolveArgs) -> anyhow::Result<String> {
    let sr = semiring(&a.semiring)?;
    let (g, vals) = load_game(&a.game, &sr, &Assignment::new())?;
    let sys = build_system(&g, &vals[a.player.index() as usize]);
    let cfg = solver_config(sys.len(), a.max_iter);
    let rep = match a.fixpoint {
        SolveFix::Mu => kleene_lfp(&sys, cfg)?,
        SolveFix::Nu => kleene_gfp(&sys, cfg)?,
    };
    let mut r = Report::new("solve-system");
    r.meta("semiring", sr.name());
    r.meta("player", a.player);
    r.meta("fixpoint", if a.fixpoint == SolveFix::Mu { "mu" } else { "nu" });
    fix_meta(&mut r, &rep);
    for line in sys.display_reduced().lines() {
        r.meta("equation", line);
    }
    for v in g.positions() {
        r.row(g.name(v), sr.format(&rep.values[v]));
    }
    let body = r.render(a.output.format);
    Ok(match a.output.format {
        Format::Text => format!("{}\n\n{body}", sys.display_reduced()),
        Format::Structured => body,
    })
}

fn census(a: CensusArgs) -> anyhow::Result<String> {
    let sr = semiring(&a.semiring)?;
    let (g, vals) = load_game(&a.game, &sr, &Assignment::new())?;
    let from = position(&g, &a.from)?;
    let basic = &vals[a.player.index() as usize];
    let opts = EnumerateOptions {
        max_count: a.max_count,
        ..EnumerateOptions::default()
    };
    let mut r = Report::new("census");
    r.meta("semiring", sr.name());
    r.meta("player", a.player);
    r.meta("from", &a.from);

    let reach: Vec<PosId> = g.reachable_from(&[from]).into_iter().collect();
    let sub_acyclic = reach_is_acyclic(&g, &reach);
    let (game, val, root) = if sub_acyclic {
        r.meta("mode", "acyclic");
        (g.clone(), basic.clone(), from)
    } else {
        let depth = a.depth.unwrap_or(g.len()).max(1);
        let boundary = if a.fixpoint == SolveFix::Mu {
            Boundary::Zero
        } else {
            Boundary::One
        };
        r.meta(
            "mode",
            format!(
                "truncated depth={depth} boundary={}",
                if boundary == Boundary::Zero { 0 } else { 1 }
            ),
        );
        let t = truncate(&g, basic, depth, boundary)?;
        let root = t.roots[from];
        (t.game, t.valuation, root)
    };
    let en = enumerate_strategies(&game, a.player, root, opts)?;
    let flags = dominant_flags(&game, &en.strategies);
    r.meta("complete", en.complete);
    r.row("strategies", en.strategies.len().to_string());
    let mut total = sr.zero();
    for (i, (s, dom)) in en.strategies.iter().zip(&flags).enumerate() {
        let v = strategy_value(s, &val, ValueMode::Acyclic)?;
        total = sr.add(&total, &v)?;
        let mut line = sr.format(&v);
        if *dom {
            line.push_str(" dominant");
        }
        r.row(format!("S{}", i + 1), line);
        r.meta(&format!("choices S{}", i + 1), s.describe(&game));
    }
    r.row("sum", sr.format(&total));
    Ok(r.render(a.output.format))
}

fn reach_is_acyclic(g: &GameGraph, reach: &[PosId]) -> bool {
    // Kahn's algorithm restricted to the reachable part.
    let inside: std::collections::BTreeSet<PosId> = reach.iter().copied().collect();
    let mut indeg: BTreeMap<PosId, usize> = reach.iter().map(|&v| (v, 0)).collect();
    for &v in reach {
        for w in g.successors(v) {
            if inside.contains(w) {
                *indeg.get_mut(w).unwrap() += 1;
            }
        }
    }
    let mut queue: Vec<PosId> = indeg.iter().filter(|(_, d)| **d == 0).map(|(v, _)| *v).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for w in g.successors(v) {
            let d = indeg.get_mut(w).unwrap();
            *d -= 1;
            if *d == 0 {
                queue.push(*w);
            }
        }
    }
    seen == reach.len()
}

fn check(c: CheckCommand) -> anyhow::Result<String> {
    match c {
        CheckCommand::Laws {
            semiring: s,
            law,
            output,
        } => {
            let sr = semiring(&s)?;
            let samples = sr.default_samples();
            let reports = if law.is_empty() {
                check_declared_laws(&sr, &samples)
            } else {
                let laws = law
                    .iter()
                    .map(|l| l.parse::<Law>().map_err(usage))
                    .collect::<anyhow::Result<Vec<_>>>()?;
                laws.into_iter().map(|l| check_law(&sr, &samples, l)).collect()
            };
            let mut r = Report::new("check-laws");
            r.meta("semiring", sr.name());
            r.meta("samples", samples.len());
            let mut ok = true;
            for rep in &reports {
                ok &= rep.passed();
                let verdict = match rep.counterexamples.first() {
                    None => format!("pass ({} cases)", rep.checked),
                    Some(w) => format!(
                        "FAIL ({} of {} cases), e.g. {w}",
                        rep.counterexamples.len(),
                        rep.checked
                    ),
                };
                r.row(rep.law.name(), verdict);
            }
            finish(r.render(output.format), ok)
        }
        CheckCommand::Game { game, from, output } => {
            // Values are irrelevant here, so no semiring is needed.
            let spec = crate::game::io::parse_spec(&read(&game)?)?;
            let g = crate::game::io::build_game(&spec)?;
            let roots = from
                .iter()
                .map(|n| position(&g, n))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let rep = validate_game(&g, if roots.is_empty() { None } else { Some(&roots) })?;
            let mut r = Report::new("check-game");
            r.row("positions", g.len().to_string());
            r.row("moves", g.moves().count().to_string());
            r.row("terminals", g.terminals().count().to_string());
            r.row("acyclic", rep.acyclic.to_string());
            if let Some(w) = rep.cycle_witness {
                r.row("cycle-through", g.name(w));
            }
            let names = |vs: &[PosId]| vs.iter().map(|&v| g.name(v)).collect::<Vec<_>>().join(" ");
            if let Some(order) = &rep.order {
                r.row("order", names(order));
            }
            if !roots.is_empty() || !g.sources().is_empty() {
                r.row("unreachable", names(&rep.unreachable));
            }
            finish(r.render(output.format), true)
        }
        CheckCommand::Separation {
            game,
            semiring: s,
            mode,
            terminals,
            output,
        } => {
            let sr = semiring(&s)?;
            let (g, vals) = load_game(&game, &sr, &Assignment::new())?;
            let mode = match mode {
                SepArg::Separating => SeparationMode::Separating,
                SepArg::Weak => SeparationMode::Weak,
                SepArg::Strong => SeparationMode::Strong,
            };
            let scope: Option<Vec<PosId>> = terminals.then(|| g.terminals().collect());
            let rep = check_separating(&g, &vals[0], &vals[1], mode, scope.as_deref())?;
            let mut r = Report::new("check-separation");
            r.meta("semiring", sr.name());
            r.meta("mode", format!("{mode:?}").to_lowercase());
            for (v, ok) in &rep.verdicts {
                let verdict = format!(
                    "{} (f0 = {}, f1 = {})",
                    if *ok { "ok" } else { "FAIL" },
                    sr.format(&rep.f0[*v]),
                    sr.format(&rep.f1[*v])
                );
                r.row(g.name(*v), verdict);
            }
            finish(r.render(output.format), rep.holds())
        }
        CheckCommand::Bisim {
            left,
            right,
            relation,
            semiring: s,
            values,
            output,
        } => {
            let sr = semiring(&s)?;
            let (g1, v1) = load_game(&left, &sr, &Assignment::new())?;
            let (g2, v2) = load_game(&right, &sr, &Assignment::new())?;
            let mut z = Vec::new();
            for pair in relation.iter().filter(|p| !p.trim().is_empty()) {
                let (a, b) = pair
                    .split_once('=')
                    .ok_or_else(|| usage(format!("expected LEFT=RIGHT, found `{pair}`")))?;
                z.push((position(&g1, a.trim())?, position(&g2, b.trim())?));
            }
            let basics = [(&v1[0], &v2[0]), (&v1[1], &v2[1])];
            let rep = verify_counting_bisim(&g1, &g2, &z, values.then_some(&basics[..]));
            let mut r = Report::new("check-bisim");
            r.row("pairs", z.len().to_string());
            let show = |ps: &[(PosId, PosId)]| {
                ps.iter()
                    .map(|(a, b)| format!("{}={}", g1.name(*a), g2.name(*b)))
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            r.row("owner-mismatch", show(&rep.owner_mismatch));
            r.row("no-bijection", show(&rep.no_bijection));
            if values {
                r.row("value-mismatch", rep.value_mismatch.join("; "));
            }
            r.row("bisimulation", rep.is_bisimulation().to_string());
            finish(r.render(output.format), rep.holds())
        }
    }
}

fn finish(text: String, ok: bool) -> anyhow::Result<String> {
    if ok {
        Ok(text)
    } else {
        Err(anyhow!(Failed(text)))
    }
}

/// Value formatting helper shared with tests: every position as `name: value`.
pub fn format_values(g: &GameGraph, sr: &Semiring, values: &[Value]) -> String {
    g.positions()
        .map(|v| format!("{}: {}\n", g.name(v), sr.format(&values[v])))
        .collect()
}
