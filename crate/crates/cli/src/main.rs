mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use output::{Format, Table};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use wheelhouse::cyclic::cyclic_complex;
use wheelhouse::derlie::{ce_complex, Coefficients, DerLieError, FreeAlgebra, LieKind};
use wheelhouse::exactla::{ChainComplex, ComplexError, Partition};
use wheelhouse::operads::{OperadError, OperadSpec, OperadTable, QuotientAlgebra};
use wheelhouse::report::{BlockReport, HomologyReport};
use wheelhouse::stability::{self, StabilityError};
use wheelhouse::wheeledbar::{self, BarError, Wheeling};
use wheelhouse::Truncation;

#[derive(Parser)]
#[command(name = "wheelhouse", version, about = "Exact homology of bar, wheeled bar, cyclic and Chevalley–Eilenberg complexes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Directory for cached composition tables; overrides WHEELHOUSE_CACHE.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true)]
    no_cache: bool,
    /// Worker threads for block-level work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Args, Clone)]
struct Trunc {
    #[arg(long, default_value_t = 4)]
    max_arity: usize,
    /// Defaults to the maximal arity.
    #[arg(long)]
    max_weight: Option<usize>,
    /// Defaults to the maximal weight.
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum WheelingArg {
    Trivial,
    Completion,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgebraArg {
    #[value(name = "der+")]
    DerPlus,
    #[value(name = "sder+")]
    SDerPlus,
    Semidirect,
}

#[derive(Clone, Copy, ValueEnum)]
enum TheoremArg {
    Main1,
    Main2,
    Newfuchs,
    Lqt,
    Calchom,
    Semidirect,
}

#[derive(Subcommand)]
enum Cmd {
    /// Homology of the operadic bar construction.
    Bar {
        /// Builtin name (com, ass, lie, prelie, alg1-k, alg1-dual) or a spec file.
        #[arg(long)]
        operad: String,
        #[command(flatten)]
        trunc: Trunc,
        /// Add isotypic multiplicities to every block.
        #[arg(long)]
        isotypic: bool,
    },
    /// Homology of the wheeled bar construction.
    Wbar {
        #[arg(long)]
        operad: String,
        #[arg(long, value_enum, default_value = "trivial")]
        wheeling: WheelingArg,
        #[command(flatten)]
        trunc: Trunc,
        #[arg(long)]
        isotypic: bool,
    },
    /// Cyclic homology of the reduced indecomposables of the derivative, or
    /// of an algebra given by an arity-one spec file.
    Hc {
        #[arg(long, required_unless_present = "algebra", conflicts_with = "algebra")]
        operad: Option<String>,
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[command(flatten)]
        trunc: Trunc,
    },
    /// Chevalley–Eilenberg homology of a derivation Lie algebra.
    Ce {
        #[arg(long)]
        operad: String,
        #[arg(long, value_enum, default_value = "der+")]
        algebra: AlgebraArg,
        #[arg(long)]
        dimv: usize,
        #[arg(long, default_value_t = 0)]
        p: usize,
        #[arg(long, default_value_t = 0)]
        q: usize,
        /// Restrict to gl(V)-invariants.
        #[arg(long)]
        invariants: bool,
        #[arg(long, default_value_t = 2)]
        max_weight: usize,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Side-by-side comparison of the two sides of a stable isomorphism.
    Compare {
        #[arg(long, value_enum)]
        theorem: TheoremArg,
        /// Defaults to com, or to alg1-k for lqt.
        #[arg(long)]
        operad: Option<String>,
        #[arg(long, value_delimiter = ',')]
        dimv: Vec<usize>,
        /// Coefficient pairs `p:q`; defaults to all q ≤ p ≤ max arity.
        #[arg(long, value_delimiter = ',')]
        coeffs: Vec<String>,
        /// Weight r for newfuchs.
        #[arg(long, default_value_t = 1)]
        weight: usize,
        #[command(flatten)]
        trunc: Trunc,
        /// Where `<theorem>_<operad>.json` and `.txt` are written.
        #[arg(long, default_value = "reports")]
        reports_dir: PathBuf,
        #[arg(long)]
        no_reports: bool,
    },
    /// Stable multiplicities of a mixed irreducible V(alpha, beta).
    Mult {
        #[arg(long)]
        operad: String,
        /// Partition on the leaves, e.g. `2,1`; empty for none.
        #[arg(long, default_value = "")]
        alpha: String,
        /// Partition on the tree factors.
        #[arg(long, default_value = "")]
        beta: String,
        #[arg(long, value_enum, default_value = "trivial")]
        wheeling: WheelingArg,
        /// Defaults to |alpha|.
        #[arg(long)]
        max_weight: Option<usize>,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
}

enum Failure {
    /// Invalid configuration or request.
    Config(String),
    /// A computed check failed.
    Check(String),
}

impl From<OperadError> for Failure {
    fn from(e: OperadError) -> Self {
        Failure::Config(e.to_string())
    }
}

impl From<ComplexError> for Failure {
    fn from(e: ComplexError) -> Self {
        Failure::Check(e.to_string())
    }
}

impl From<BarError> for Failure {
    fn from(e: BarError) -> Self {
        match e {
            BarError::Complex(c) => c.into(),
            e => Failure::Config(e.to_string()),
        }
    }
}

impl From<DerLieError> for Failure {
    fn from(e: DerLieError) -> Self {
        match e {
            DerLieError::Complex(c) => c.into(),
            DerLieError::NotClosed(s) => Failure::Check(s),
            e => Failure::Config(e.to_string()),
        }
    }
}

impl From<StabilityError> for Failure {
    fn from(e: StabilityError) -> Self {
        match e {
            StabilityError::Bar(b) => b.into(),
            StabilityError::DerLie(d) => d.into(),
            e => Failure::Config(e.to_string()),
        }
    }
}

struct Ctx {
    cache: Option<PathBuf>,
}

impl Ctx {
    fn operad(&self, selector: &str, max_arity: usize) -> Result<OperadTable, Failure> {
        let spec = match selector {
            "com" | "ass" | "lie" | "prelie" => OperadSpec::builtin(selector, max_arity),
            "alg1-k" => OperadSpec::alg1_ground_field(),
            "alg1-dual" => OperadSpec::alg1_dual_numbers(),
            path => {
                let text = std::fs::read_to_string(path).map_err(|e| Failure::Config(format!("operad {path:?}: {e}")))?;
                let mut spec: OperadSpec = serde_json::from_str(&text).map_err(|e| Failure::Config(format!("operad spec {path:?}: {e}")))?;
                spec.max_arity = spec.max_arity.max(max_arity);
                spec
            }
        };
        let op = OperadTable::new(spec)?;
        Ok(match &self.cache {
            Some(dir) => op.with_cache_dir(dir),
            None => op,
        })
    }
}

impl Trunc {
    fn resolve(&self) -> Result<Truncation, Failure> {
        let w = self.max_weight.unwrap_or(self.max_arity);
        let t = Truncation::new(self.max_arity, w, self.max_degree.unwrap_or(w));
        positive(&t)?;
        Ok(t)
    }
}

fn positive(t: &Truncation) -> Result<(), Failure> {
    if t.max_arity == 0 || t.max_degree == 0 {
        return Err(Failure::Config("--max-arity and --max-degree must be positive".into()));
    }
    Ok(())
}

fn wheeling(w: WheelingArg) -> Wheeling {
    match w {
        WheelingArg::Trivial => Wheeling::Trivial,
        WheelingArg::Completion => Wheeling::Completion,
    }
}

fn partition(s: &str) -> Result<Partition, Failure> {
    let parts: Vec<usize> = s
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse::<usize>().map_err(|_| Failure::Config(format!("bad partition {s:?}"))))
        .collect::<Result<_, _>>()?;
    if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Failure::Config(format!("{s:?} is not a partition (positive, non-increasing parts)")));
    }
    Ok(parts)
}

fn coeff(s: &str) -> Result<(usize, usize), Failure> {
    let bad = || Failure::Config(format!("bad coefficient pair {s:?}, expected p:q"));
    let (p, q) = s.split_once(':').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

fn checked(c: &ChainComplex) -> Result<(), Failure> {
    Ok(c.check_d_squared()?)
}

fn blocks_of(c: &ChainComplex, part: &str, max_degree: usize) -> Result<Vec<BlockReport>, Failure> {
    checked(c)?;
    Ok(c.homology_dims()?
        .into_iter()
        .filter(|(k, _)| k.d <= max_degree)
        .map(|(k, dim)| BlockReport { n: k.n, w: k.w, d: k.d, part: part.into(), dim, isotypic: None, untrusted: c.untrusted.contains(&k) })
        .collect())
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    if let Some(j) = cli.jobs {
        if j == 0 {
            return Err(Failure::Config("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global().map_err(|e| Failure::Config(e.to_string()))?;
    }
    let cache = if cli.no_cache {
        None
    } else {
        cli.cache_dir.clone().or_else(|| std::env::var_os("WHEELHOUSE_CACHE").map(PathBuf::from)).or(Some(PathBuf::from("cache")))
    };
    let ctx = Ctx { cache };
    let mut passed = true;
    let table: Table = match cli.cmd {
        Cmd::Bar { operad, trunc, isotypic } => {
            let t = trunc.resolve()?;
            let op = ctx.operad(&operad, t.max_arity + 1)?;
            let gc = wheeledbar::bar(&op, &t, isotypic)?;
            checked(&gc.complex)?;
            let blocks = wheeledbar::part_report(&gc, "operadic", isotypic)?.into_iter().filter(|b| b.d <= t.max_degree).collect();
            let r = HomologyReport { operad: Some(op.name().into()), blocks, ..Default::default() };
            output::homology(&r, format!("bar {}", op.name()))
        }
        Cmd::Wbar { operad, wheeling: wh, trunc, isotypic } => {
            let t = trunc.resolve()?;
            let op = ctx.operad(&operad, t.max_arity + 2)?;
            let wh = wheeling(wh);
            let wb = match wh {
                Wheeling::Trivial => wheeledbar::trivial_wheeling(&op).wheeled_bar(&t, isotypic)?,
                Wheeling::Completion => wheeledbar::wheeled_completion(&op, &t)?.wheeled_bar(&t, isotypic)?,
            };
            checked(&wb.operadic.complex)?;
            checked(&wb.wheeled.complex)?;
            let mut r = wheeledbar::report(op.name(), wh, &wb, isotypic)?;
            r.blocks.retain(|b| b.d <= t.max_degree);
            output::homology(&r, format!("wbar {} {}", op.name(), wh.as_str()))
        }
        Cmd::Hc { operad, algebra, trunc } => {
            let t = trunc.resolve()?;
            let (op, alg) = match (&operad, &algebra) {
                (Some(name), _) => {
                    let op = ctx.operad(name, t.max_arity + 2)?;
                    (op, false)
                }
                (None, Some(path)) => (ctx.operad(&path.to_string_lossy(), 1)?, true),
                (None, None) => return Err(Failure::Config("hc needs --operad or --algebra".into())),
            };
            if alg && !op.is_arity_one() {
                return Err(Failure::Config("--algebra expects an arity-one (alg1) spec".into()));
            }
            let a = if alg { QuotientAlgebra::reduced_derivative(&op, 0) } else { QuotientAlgebra::reduced_indecomposables(&op, t.max_arity) };
            let c = cyclic_complex(&a, &t, false)?;
            let r = HomologyReport { operad: Some(op.name().into()), blocks: blocks_of(&c.complex, "cyclic", t.max_degree)?, ..Default::default() };
            output::homology(&r, format!("hc {}", op.name()))
        }
        Cmd::Ce { operad, algebra, dimv, p, q, invariants, max_weight, max_degree } => {
            if max_degree == 0 {
                return Err(Failure::Config("--max-degree must be positive".into()));
            }
            let op = ctx.operad(&operad, max_weight + 2)?;
            let kind = match algebra {
                AlgebraArg::DerPlus => LieKind::DerPlus,
                AlgebraArg::SDerPlus => LieKind::SDerPlus,
                AlgebraArg::Semidirect => LieKind::Semidirect,
            };
            let fa = FreeAlgebra::new(&op, dimv, max_weight)?;
            let c = ce_complex(kind, &fa, Coefficients { p, q, invariants }, &Truncation::new(0, max_weight, max_degree))?;
            let r = HomologyReport {
                operad: Some(op.name().into()),
                algebra: Some(kind.as_str().into()),
                dim_v: Some(dimv),
                p: Some(p),
                q: Some(q),
                blocks: blocks_of(&c, "ce", max_degree)?,
                ..Default::default()
            };
            output::homology(&r, format!("ce {} {} dimV={dimv} p={p} q={q}", op.name(), kind.as_str()))
        }
        Cmd::Compare { theorem, operad, dimv, coeffs, weight, trunc, reports_dir, no_reports } => {
            let name = operad.unwrap_or_else(|| if matches!(theorem, TheoremArg::Lqt) { "alg1-k".into() } else { "com".into() });
            let t = trunc.resolve()?;
            let pairs: Vec<(usize, usize)> = if coeffs.is_empty() {
                (0..=t.max_arity).flat_map(|p| (0..=p).map(move |q| (p, q))).collect()
            } else {
                coeffs.iter().map(|s| coeff(s)).collect::<Result<_, _>>()?
            };
            let first = |default: usize| dimv.first().copied().unwrap_or(default);
            let dims = if dimv.is_empty() { vec![4] } else { dimv.clone() };
            let rep = match theorem {
                TheoremArg::Main1 => {
                    let op = ctx.operad(&name, t.max_arity + 2)?;
                    stability::compare_main1(&op, &dims, &t, &pairs)?
                }
                TheoremArg::Main2 => {
                    let op = ctx.operad(&name, t.max_arity + 2)?;
                    stability::compare_main2(&op, &dims, &t, &pairs)?
                }
                TheoremArg::Newfuchs => {
                    let op = ctx.operad(&name, weight + 2)?;
                    stability::compare_newfuchs(&op, first(4), weight, trunc.max_degree.unwrap_or(3))?
                }
                TheoremArg::Lqt => {
                    let op = ctx.operad(&name, 1)?;
                    stability::compare_lqt(&op, first(3), trunc.max_degree.unwrap_or(4))?
                }
                TheoremArg::Calchom => {
                    let op = ctx.operad(&name, t.max_arity + 2)?;
                    stability::compare_calchom(&op, &t)?
                }
                TheoremArg::Semidirect => {
                    let w = trunc.max_weight.unwrap_or(2);
                    let op = ctx.operad(&name, w + 2)?;
                    stability::compare_semidirect(&op, first(3), w, trunc.max_degree.unwrap_or(2))?
                }
            };
            if !no_reports {
                rep.write(&reports_dir)?;
            }
            passed = rep.passed();
            output::comparison(&rep)
        }
        Cmd::Mult { operad, alpha, beta, wheeling: wh, max_weight, max_degree } => {
            let (alpha, beta) = (partition(&alpha)?, partition(&beta)?);
            let p: usize = alpha.iter().sum();
            if max_degree == 0 {
                return Err(Failure::Config("--max-degree must be positive".into()));
            }
            let t = Truncation::new(p, max_weight.unwrap_or(p), max_degree);
            let op = ctx.operad(&operad, p + 2)?;
            output::multiplicity(&stability::multiplicity_report(&op, wheeling(wh), &alpha, &beta, &t)?)
        }
    };
    Ok((table.render(cli.format), passed))
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    match run(cli).and_then(|(text, passed)| emit(&text, out.as_deref()).map(|_| passed)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("stable-range comparison failed");
            ExitCode::from(2)
        }
        Err(Failure::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(2)
        }
    }
}
