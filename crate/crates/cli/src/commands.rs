use std::fmt::Write as _;
use std::time::Instant;

use bdmp::apps::{
    fold_with, led_search_oracle, led_solver, nussinov_oracle, ops_with, osg_search_oracle, osg_solver, rna_solver,
    EditModel, RnaAlphabet,
};
use bdmp::bd::{
    auto_delta, bd_cols_product, bd_convolution, bd_product_report, bd_rows_product, naive_convolution, BdProductConfig,
    BdReport, BdSide, Groups, Mode,
};
use bdmp::bounded::bd_width;
use bdmp::gen::bd_matrix;
use bdmp::grammar::{derivation_score, split_symbols, to_cnf, ScoredGrammar};
use bdmp::matrix::ScoreMatrix;
use bdmp::parser::{parse_score_tables, CnfTables, DotKernel, Engine, ParserConfig};
use bdmp::product::{naive_minplus, small_entry_minplus};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::args::{
    BdArgs, BenchArgs, ConvolveArgs, EngineArg, KernelArg, LedArgs, MulMode, MultiplyArgs, OsgArgs, ParseArgs,
    RnaArgs, SideArg,
};
use crate::error::{CliError, CliResult};
use crate::formats::{read_matrix, read_sequence, read_strings, read_text, read_with_header, write_matrix, write_sequence, write_text};
use crate::report::{checksum, BenchRow, ReportConfig, RunReport};

/// What a command prints and reports.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    pub stdout: String,
    pub report: RunReport,
}

fn engine(e: EngineArg) -> Engine {
    match e {
        EngineArg::Valiant => Engine::Valiant,
        EngineArg::Cyk => Engine::Cyk,
    }
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Randomized => "randomized",
        Mode::Deterministic => "deterministic",
    }
}

fn bd_config(bd: &BdArgs, w: i64, seed: u64) -> BdProductConfig {
    BdProductConfig {
        w,
        delta: bd.delta,
        rho: bd.rho,
        mode: if bd.deterministic { Mode::Deterministic } else { Mode::Randomized },
        seed,
        recursion_cutoff: bd.recursion_cutoff,
        improved_phase2: bd.improved_phase2,
    }
}

fn report_from_bd(command: &str, rep: &BdReport) -> RunReport {
    RunReport {
        command: command.into(),
        config: ReportConfig {
            w: Some(rep.config.w),
            delta: Some(rep.config.delta),
            rho: Some(rep.config.rho),
            mode: mode_name(rep.config.mode).into(),
            seed: rep.config.seed,
        },
        phase_ms: rep.phase_seconds.iter().map(|s| s * 1e3).collect(),
        ..Default::default()
    }
}

fn first_difference(got: &ScoreMatrix, want: &ScoreMatrix) -> Option<String> {
    if (got.rows(), got.cols()) != (want.rows(), want.cols()) {
        return Some(format!("shape {}x{} vs {}x{}", got.rows(), got.cols(), want.rows(), want.cols()));
    }
    (0..got.rows())
        .flat_map(|i| (0..got.cols()).map(move |j| (i, j)))
        .find(|&(i, j)| got.get(i, j) != want.get(i, j))
        .map(|(i, j)| format!("cell ({i}, {j}): {} vs naive {}", got.get(i, j), want.get(i, j)))
}

fn max_abs(m: &ScoreMatrix) -> i64 {
    m.entries().iter().filter_map(|s| s.value()).map(i64::abs).max().unwrap_or(0)
}

/// Largest spread of `value(member, other)` within a group, over finite entries.
fn group_spread(groups: &Groups, others: usize, value: impl Fn(usize, usize) -> Option<i64>) -> i64 {
    let mut worst = 0;
    for g in 0..groups.count() {
        for o in 0..others {
            let vals = groups.members(g).iter().filter_map(|&m| value(m, o));
            if let (Some(lo), Some(hi)) = (vals.clone().min(), vals.max()) {
                worst = worst.max(hi - lo);
            }
        }
    }
    worst
}

pub fn multiply(args: &MultiplyArgs, seed: u64) -> CliResult<Outcome> {
    let a = read_matrix(&args.a)?;
    let b = read_matrix(&args.b)?;
    let mut report = RunReport {
        command: "multiply".into(),
        config: ReportConfig {
            mode: format!("{:?}", args.mode).to_lowercase(),
            seed,
            ..Default::default()
        },
        ..Default::default()
    };
    let start = Instant::now();
    let group_size = || {
        args.group_size
            .or(args.bd.delta)
            .unwrap_or_else(|| auto_delta(a.rows().max(a.cols()).max(b.cols())))
            .max(1)
    };
    let c = match args.mode {
        MulMode::Naive => naive_minplus(&a, &b)?,
        MulMode::Small => small_entry_minplus(&a, &b, args.bound.unwrap_or_else(|| max_abs(&a).max(max_abs(&b))))?,
        MulMode::Bd => {
            let w = match args.w {
                Some(w) => w,
                None => match (bd_width(&a), bd_width(&b)) {
                    (Some(x), Some(y)) => x.max(y),
                    _ => return Err(CliError::Precondition("bd mode needs finite inputs".into())),
                },
            };
            let (c, rep) = bd_product_report(&a, &b, &bd_config(&args.bd, w, seed))?;
            report = RunReport {
                config: ReportConfig {
                    mode: format!("bd-{}", mode_name(rep.config.mode)),
                    ..report_from_bd("multiply", &rep).config
                },
                ..report_from_bd("multiply", &rep)
            };
            c
        }
        MulMode::BdRows => {
            let groups = Groups::contiguous(a.rows(), group_size());
            let bound = args
                .bound
                .unwrap_or_else(|| group_spread(&groups, a.cols(), |i, k| a.get(i, k).value()));
            bd_rows_product(&a, &b, &groups, bound, &bd_config(&args.bd, 0, seed))?
        }
        MulMode::BdCols => {
            let groups = Groups::contiguous(a.cols(), group_size());
            let bound = args
                .bound
                .unwrap_or_else(|| group_spread(&groups, a.rows(), |k, i| a.get(i, k).value()));
            bd_cols_product(&a, &b, &groups, bound, &bd_config(&args.bd, 0, seed))?
        }
    };
    if args.verify {
        if let Some(diff) = first_difference(&c, &naive_minplus(&a, &b)?) {
            return Err(CliError::Mismatch(diff));
        }
    }
    write_matrix(&args.out, &c)?;
    report.wall_ms = start.elapsed().as_secs_f64() * 1e3;
    report.checksum = checksum(&c.to_text());
    Ok(Outcome {
        stdout: format!("{}x{} sha256 {}\n", c.rows(), c.cols(), report.checksum),
        report,
    })
}

fn read_grammar(path: &std::path::Path) -> CliResult<ScoredGrammar> {
    ScoredGrammar::parse_text(&read_text(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

pub fn parse(args: &ParseArgs, seed: u64) -> CliResult<Outcome> {
    let g = read_grammar(&args.grammar)?;
    let cnf = to_cnf(&g)?;
    let tables = CnfTables::new(&cnf)?;
    let cfg = ParserConfig {
        w: args.w,
        kernel: match args.kernel {
            KernelArg::Bd => DotKernel::Bd,
            KernelArg::Naive => DotKernel::Naive,
        },
        bd: bd_config(&args.bd, args.w, seed),
    };
    let start = Instant::now();
    let mut out = String::new();
    let mut fallbacks = 0;
    for line in read_strings(&args.input)? {
        let sigma = cnf.tokenize(&line)?;
        let (score, stats) = parse_score_tables(&tables, &sigma, engine(args.engine), &cfg)?;
        fallbacks += stats.fallbacks;
        if args.oracle {
            let want = derivation_score(&g, &sigma)?;
            if want != score {
                return Err(CliError::Mismatch(format!("{line:?}: parser {score}, direct scoring {want}")));
            }
        }
        let _ = writeln!(out, "{score}");
    }
    Ok(scored_outcome("parse", out, Some(args.w), seed, fallbacks, start))
}

fn scored_outcome(command: &str, stdout: String, w: Option<i64>, seed: u64, fallbacks: usize, start: Instant) -> Outcome {
    let report = RunReport {
        command: command.into(),
        config: ReportConfig {
            w,
            mode: "parse".into(),
            seed,
            ..Default::default()
        },
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        fallbacks,
        checksum: checksum(&stdout),
        ..Default::default()
    };
    Outcome { stdout, report }
}

fn parser_cfg(w: i64, seed: u64) -> ParserConfig {
    let mut cfg = ParserConfig::with_w(w);
    cfg.bd.seed = seed;
    cfg
}

pub fn led(args: &LedArgs, seed: u64) -> CliResult<Outcome> {
    let cnf = to_cnf(&read_grammar(&args.grammar)?)?;
    let model = if args.indel { EditModel::INDEL } else { EditModel::FULL };
    let solver = led_solver(&cnf, model)?;
    let cfg = parser_cfg(solver.w, seed);
    let start = Instant::now();
    let mut out = String::new();
    let mut fallbacks = 0;
    for line in read_strings(&args.input)? {
        let sigma = solver.grammar.tokenize(&line)?;
        let (d, stats) = solver.score_with(&sigma, engine(args.engine), &cfg)?;
        fallbacks += stats.fallbacks;
        if args.oracle {
            let cyk = solver.score(&sigma, Engine::Cyk)?;
            if cyk != d {
                return Err(CliError::Mismatch(format!("{line:?}: engine {d}, CYK {cyk}")));
            }
            if sigma.len() <= 8 {
                let expected = d.value().map(|v| v as u64).filter(|&v| v <= args.max_edits);
                let found = led_search_oracle(&cnf, &sigma, model, args.max_edits)?;
                if found != expected {
                    return Err(CliError::Mismatch(format!("{line:?}: parser {d}, edit search {found:?}")));
                }
            }
        }
        let _ = writeln!(out, "{d}");
    }
    Ok(scored_outcome("led", out, Some(solver.w), seed, fallbacks, start))
}

pub fn rna(args: &RnaArgs, seed: u64) -> CliResult<Outcome> {
    let (header, lines) = read_with_header(&args.input)?;
    let alpha = RnaAlphabet::parse_header(&header)?;
    let solver = rna_solver(&alpha)?;
    let start = Instant::now();
    let mut out = String::new();
    for line in lines {
        let sigma = alpha.encode(&line)?;
        let (d, pairs) = fold_with(&solver, &sigma, &alpha, engine(args.engine))?;
        if args.oracle {
            let want = nussinov_oracle(&sigma, &alpha);
            if want != pairs {
                return Err(CliError::Mismatch(format!("{line:?}: parser {pairs} pairs, interval DP {want}")));
            }
        }
        let _ = writeln!(out, "{d} {pairs}");
    }
    Ok(scored_outcome("rna", out, Some(solver.w), seed, 0, start))
}

pub fn osg(args: &OsgArgs, seed: u64) -> CliResult<Outcome> {
    let (header, lines) = read_with_header(&args.input)?;
    let alphabet = split_symbols(&header);
    let solver = osg_solver(&alphabet)?;
    let start = Instant::now();
    let mut out = String::new();
    for line in lines {
        let sigma = solver.grammar.tokenize(&line)?;
        let ops = ops_with(&solver, &sigma, engine(args.engine))?;
        if args.oracle && sigma.len() <= 8 {
            let want = osg_search_oracle(&sigma, alphabet.len(), args.depth_cap)?;
            if want != ops {
                return Err(CliError::Mismatch(format!("{line:?}: parser {ops}, search {want}")));
            }
        }
        let _ = writeln!(out, "{ops}");
    }
    Ok(scored_outcome("osg", out, Some(solver.w), seed, 0, start))
}

pub fn convolve(args: &ConvolveArgs, seed: u64) -> CliResult<Outcome> {
    let a = read_sequence(&args.a)?;
    let b = read_sequence(&args.b)?;
    let (side, smooth) = match args.bd_side {
        SideArg::A => (BdSide::A, &a),
        SideArg::B => (BdSide::B, &b),
    };
    let w = args
        .w
        .unwrap_or_else(|| smooth.windows(2).map(|p| (p[0] - p[1]).abs()).max().unwrap_or(0));
    let start = Instant::now();
    let c = bd_convolution(&a, &b, side, &bd_config(&args.bd, w, seed))?;
    if args.verify {
        let want = naive_convolution(&a, &b);
        if let Some(k) = (0..c.len().max(want.len())).find(|&k| c.get(k) != want.get(k)) {
            return Err(CliError::Mismatch(format!("index {k}: {:?} vs naive {:?}", c.get(k), want.get(k))));
        }
    }
    write_sequence(&args.out, &c)?;
    let text = crate::formats::format_sequence(&c);
    let report = RunReport {
        command: "convolve".into(),
        config: ReportConfig {
            w: Some(w),
            delta: args.bd.delta,
            rho: args.bd.rho,
            mode: mode_name(bd_config(&args.bd, w, seed).mode).into(),
            seed,
        },
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        checksum: checksum(&text),
        ..Default::default()
    };
    Ok(Outcome {
        stdout: format!("{} values sha256 {}\n", c.len(), report.checksum),
        report,
    })
}

fn parse_param(tok: &str, n: usize, what: &str) -> CliResult<Option<usize>> {
    match tok {
        "auto" => Ok(None),
        "n" => Ok(Some(n)),
        _ => tok
            .parse()
            .map(Some)
            .map_err(|_| CliError::Input(format!("bad {what} `{tok}`"))),
    }
}

/// Instances depend only on `(seed, n, w)`, never on the other parameters.
pub fn bench_rows(args: &BenchArgs, seed: u64) -> CliResult<Vec<BenchRow>> {
    let modes: Vec<Mode> = args
        .modes
        .iter()
        .map(|m| match m.as_str() {
            "randomized" => Ok(Mode::Randomized),
            "deterministic" => Ok(Mode::Deterministic),
            _ => Err(CliError::Input(format!("bad mode `{m}`"))),
        })
        .collect::<CliResult<_>>()?;
    let mut rows = Vec::new();
    for &n in &args.sizes {
        for &w in &args.widths {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (n as u64).rotate_left(32) ^ w as u64);
            let a = bd_matrix(&mut rng, n, n, w);
            let b = bd_matrix(&mut rng, n, n, w);
            let t = Instant::now();
            let naive = naive_minplus(&a, &b)?;
            let naive_ms = t.elapsed().as_secs_f64() * 1e3;
            for d in &args.deltas {
                for r in &args.rhos {
                    for &mode in &modes {
                        let cfg = BdProductConfig {
                            w,
                            delta: parse_param(d, n, "delta")?,
                            rho: parse_param(r, n, "rho")?,
                            mode,
                            seed,
                            ..Default::default()
                        };
                        let t = Instant::now();
                        let (c, rep) = bd_product_report(&a, &b, &cfg)?;
                        let bd_ms = t.elapsed().as_secs_f64() * 1e3;
                        rows.push(BenchRow {
                            n,
                            w,
                            delta: rep.config.delta,
                            rho: rep.config.rho,
                            mode: mode_name(mode).into(),
                            naive_ms,
                            bd_ms,
                            checksum: checksum(&c.to_text()),
                            verified: (n <= args.verify_max).then(|| c == naive),
                        });
                    }
                }
            }
        }
    }
    Ok(rows)
}

pub fn bench(args: &BenchArgs, seed: u64) -> CliResult<Outcome> {
    let start = Instant::now();
    let rows = bench_rows(args, seed)?;
    let mut out = String::new();
    for row in &rows {
        out.push_str(&serde_json::to_string(row).expect("rows serialize"));
        out.push('\n');
    }
    let joined: String = rows.iter().map(|r| r.checksum.as_str()).collect();
    let report = RunReport {
        command: "bench".into(),
        config: ReportConfig {
            mode: args.modes.join(","),
            seed,
            ..Default::default()
        },
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        checksum: checksum(&joined),
        ..Default::default()
    };
    if let Some(path) = &args.out {
        write_text(path, &out)?;
        out = format!("{} rows written to {}\n", rows.len(), path.display());
    }
    if let Some(bad) = rows.iter().find(|r| r.verified == Some(false)) {
        return Err(CliError::Mismatch(format!(
            "n={} delta={} rho={} {}: BD product differs from naive",
            bad.n, bad.delta, bad.rho, bad.mode
        )));
    }
    Ok(Outcome { stdout: out, report })
}
