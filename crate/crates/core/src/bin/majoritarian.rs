use std::fs::{self, File};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use majoritarian::experiments::{
    self, canonical_count, census_canonical, census_indexed, write_cdf_csv, write_histogram_csv, Census, Curve,
};
use majoritarian::majority::compare;
use majoritarian::reconstruct::{query_bound, reconstruct, rotation_equivalent, MajorityOracle, ProfileOracle};
use majoritarian::rules::Rule;
use majoritarian::topcycle::{tc_characterize, TcDescription};
use majoritarian::{CoveringVariant, Error, MajorityMatrix, Profile, Universe, DEFAULT_BRUTE_LIMIT, MAX_BRUTE};

#[derive(Parser)]
#[command(name = "majoritarian", version, about = "Majority graphs over house-allocation assignments")]
struct Cli {
    /// Largest n for which all n! assignments are materialized.
    #[arg(long, global = true, env = "MAJ_BRUTE_LIMIT", default_value_t = DEFAULT_BRUTE_LIMIT)]
    brute_limit: usize,
    /// Worker threads (defaults to the number of logical cores).
    #[arg(long, global = true, env = "MAJ_JOBS")]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate assignment rules on a profile.
    Eval {
        file: PathBuf,
        /// Comma-separated rule names, e.g. popular,tc,uc-gillies.
        #[arg(long, value_delimiter = ',', default_value = "popular,po,tc,uc-mckelvey")]
        rules: Vec<Rule>,
        /// Restrict uncovered-set rules to one covering variant.
        #[arg(long)]
        variant: Option<CoveringVariant>,
    },
    /// Describe the top cycle.
    Tc { file: PathBuf },
    /// Majority margin of one assignment over another.
    Compare { file: PathBuf, mu: String, lambda: String },
    /// Recover every profile inducing the profile's majority graph.
    Reconstruct { file: PathBuf },
    /// Decide whether two profiles induce the same majority graph.
    Equiv { first: PathBuf, second: PathBuf },
    /// Statistics over canonical profiles.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// First canonical index.
        #[arg(long, default_value_t = 0)]
        start: u128,
        #[command(flatten)]
        common: StatsArgs,
    },
    /// Statistics over randomly drawn profiles.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long, env = "MAJ_SEED", default_value_t = experiments::DEFAULT_SEED)]
        seed: u64,
        /// Draw canonical profiles uniformly instead of independent rankings.
        #[arg(long)]
        canonical: bool,
        #[command(flatten)]
        common: StatsArgs,
    },
}

#[derive(Args)]
struct StatsArgs {
    /// Number of profiles (all remaining canonical ones when enumerating).
    #[arg(long, env = "MAJ_COUNT")]
    count: Option<u128>,
    #[arg(long, value_enum, default_value_t = Stats::UcSizes)]
    stats: Stats,
    /// Directory for CSV files; stdout when absent.
    #[arg(long, env = "MAJ_OUT")]
    out: Option<PathBuf>,
    /// Allow runs over more than a million profiles.
    #[arg(long, env = "MAJ_LONG")]
    long: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Stats {
    UcSizes,
    Ratio,
    TcSizes,
    Facts,
    All,
}

const LONG_RUN: u128 = 1_000_000;

fn read_profile(path: &Path) -> Result<Profile, Error> {
    Profile::parse(&fs::read_to_string(path)?)
}

fn print_set(profile: &Profile, members: impl Iterator<Item = usize>) {
    let u = Universe::get(profile.n()).expect("checked against the brute limit");
    for i in members {
        println!("  {}", profile.format_assignment(&u.assignment(i)));
    }
}

fn describe(profile: &Profile, d: &TcDescription) -> String {
    let size = d.size();
    match d {
        TcDescription::Winner { winner } => {
            format!("case I, size {size}: {}", profile.format_assignment(winner))
        }
        TcDescription::Pair { pair } => format!(
            "case II, size {size}: {} {}",
            profile.format_assignment(&pair[0]),
            profile.format_assignment(&pair[1])
        ),
        TcDescription::AllButTwo { excluded } => format!(
            "case III, size {size}: all but {} {}",
            profile.format_assignment(&excluded[0]),
            profile.format_assignment(&excluded[1])
        ),
        TcDescription::AllButOne { excluded } => {
            format!("case IV, size {size}: all but {}", profile.format_assignment(excluded))
        }
        TcDescription::All { .. } => format!("case V, size {size}: every assignment"),
        TcDescription::Explicit { .. } => format!("n < 5, size {size}"),
    }
}

fn check_limit(n: usize, limit: usize) -> Result<(), Error> {
    let limit = limit.min(MAX_BRUTE);
    if n > limit {
        return Err(Error::UniverseTooLarge { n, limit });
    }
    Ok(())
}

fn eval(profile: &Profile, rules: &[Rule], variant: Option<CoveringVariant>, limit: usize) -> Result<(), Error> {
    let rules: Vec<Rule> = rules
        .iter()
        .map(|&r| match (r, variant) {
            (Rule::Uncovered(_), Some(v)) => Rule::Uncovered(v),
            _ => r,
        })
        .collect();
    let n = profile.n();
    if rules.iter().any(|&r| r != Rule::TopCycle) {
        check_limit(n, limit)?;
    }
    let matrix = if rules.iter().any(|r| r.needs_matrix() && *r != Rule::TopCycle) {
        Some(MajorityMatrix::build_with_limit(profile, limit)?)
    } else {
        None
    };
    for rule in rules {
        let t = Instant::now();
        if rule == Rule::TopCycle {
            let d = tc_characterize(profile)?;
            println!("{rule}: {} ({:.2?})", describe(profile, &d), t.elapsed());
            if n <= limit.min(MAX_BRUTE) {
                print_set(profile, d.members()?.iter());
            }
            continue;
        }
        let set = rule.evaluate(profile, matrix.as_ref())?;
        if set.is_empty() {
            println!("{rule}: EMPTY ({:.2?})", t.elapsed());
            continue;
        }
        println!("{rule}: {} assignments ({:.2?})", set.len(), t.elapsed());
        print_set(profile, set.iter());
    }
    Ok(())
}

fn write_stats(census: &Census, stats: Stats, out: Option<&Path>) -> Result<(), Error> {
    let sizes = matches!(stats, Stats::UcSizes | Stats::All);
    let ratio = matches!(stats, Stats::Ratio | Stats::All);
    if let Some(dir) = out {
        fs::create_dir_all(dir)?;
    }
    let emit = |name: String, write: &dyn Fn(&mut dyn Write) -> Result<(), Error>| -> Result<(), Error> {
        match out {
            Some(dir) => write(&mut File::create(dir.join(format!("{name}.csv")))?),
            None => {
                println!("# {name}");
                write(&mut io::stdout().lock())
            }
        }
    };
    if sizes {
        for curve in Curve::ALL {
            let rows = census.histogram(curve);
            emit(format!("sizes_{}", curve.name()), &|w| write_histogram_csv(w, &rows))?;
        }
    }
    if ratio {
        for v in CoveringVariant::ALL {
            let rows = census.ratio_cdf(v);
            emit(format!("ratio_{}", v.name()), &|w| write_cdf_csv(w, &rows))?;
        }
    }
    if matches!(stats, Stats::TcSizes | Stats::All) {
        let sizes: Vec<String> = census.tc_sizes().keys().map(|k| k.to_string()).collect();
        println!("top-cycle sizes: {{{}}}", sizes.join(", "));
    }
    if matches!(stats, Stats::Facts | Stats::All) {
        let report = census.fact_report();
        println!("profiles: {}", report.profiles);
        println!("fact violations (items 1-4): {:?}", report.violations);
        if let Some(p) = &report.example {
            print!("first violating profile:\n{}", p.to_text());
        }
    }
    Ok(())
}

fn guard_long(count: u128, long: bool) -> Result<(), Error> {
    if count > LONG_RUN && !long {
        return Err(Error::LongRunRequired { count, limit: LONG_RUN });
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), Error> {
    let limit = cli.brute_limit;
    match cli.command {
        Command::Eval { file, rules, variant } => eval(&read_profile(&file)?, &rules, variant, limit)?,
        Command::Tc { file } => {
            let profile = read_profile(&file)?;
            let d = tc_characterize(&profile)?;
            println!("{}", describe(&profile, &d));
            if profile.n() <= limit.min(MAX_BRUTE) && d.case().is_none() {
                print_set(&profile, d.members()?.iter());
            }
        }
        Command::Compare { file, mu, lambda } => {
            let profile = read_profile(&file)?;
            let outcome = compare(&profile, &profile.parse_assignment(&mu)?, &profile.parse_assignment(&lambda)?)?;
            println!("{:+} {:?}", outcome.margin, outcome.verdict);
        }
        Command::Reconstruct { file } => {
            let profile = read_profile(&file)?;
            let mut oracle = ProfileOracle::new(profile.clone());
            let class = reconstruct(&mut oracle)?;
            println!("decomposition: {}", class.decomposition().display(profile.labels()));
            println!("shifts: {:?}", class.shifts());
            println!("class size: {}", class.len());
            println!("queries: {} (bound {})", oracle.queries(), query_bound(profile.n()));
            for (r, member) in class.shifts().iter().zip(class.members()) {
                print!("shift {r}:\n{}", member.to_text());
            }
        }
        Command::Equiv { first, second } => {
            let (a, b) = (read_profile(&first)?, read_profile(&second)?);
            if a.n() != b.n() {
                return Err(Error::DimensionMismatch { expected: a.n(), found: b.n() });
            }
            let yes = |b: bool| if b { "yes" } else { "no" };
            println!("rotation-equivalent: {}", yes(rotation_equivalent(&a, &b)));
            if a.n() <= 5 && a.n() <= limit {
                let (ma, mb) = (MajorityMatrix::build_with_limit(&a, limit)?, MajorityMatrix::build_with_limit(&b, limit)?);
                println!("same majority graph: {}", yes(ma.weak_relation() == mb.weak_relation()));
            }
        }
        Command::Enumerate { n, start, common } => {
            check_limit(n, limit)?;
            let total = canonical_count(n)?;
            let end = common.count.map_or(total, |c| (start + c).min(total));
            guard_long(end.saturating_sub(start), common.long)?;
            let t = Instant::now();
            let census = census_canonical(n, start..end)?;
            eprintln!("{} profiles in {:.2?}", census.profiles(), t.elapsed());
            write_stats(&census, common.stats, common.out.as_deref())?;
        }
        Command::Sample { n, seed, canonical, common } => {
            check_limit(n, limit)?;
            let count = common.count.unwrap_or(1000);
            guard_long(count, common.long)?;
            let count = count as u64;
            let t = Instant::now();
            let census = if canonical {
                census_indexed(n, count, |i| experiments::sampled_canonical_profile(n, seed, i))?
            } else {
                census_indexed(n, count, |i| Ok(experiments::impartial_profile(n, seed, i)))?
            };
            eprintln!("{} profiles in {:.2?}", census.profiles(), t.elapsed());
            write_stats(&census, common.stats, common.out.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build_global().ok();
    }
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::UniverseTooLarge { .. } | Error::LongRunRequired { .. } => 3,
                Error::Io(_) | Error::Csv(_) | Error::Unresolvable(_) => 1,
                _ => 2,
            })
        }
    }
}
