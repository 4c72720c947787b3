use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use orbit3::classify::{self, Distinction};
use orbit3::group::{self, GroupSpec};
use orbit3::lemmas::{self, Level};
use orbit3::numtheory;
use orbit3::report::Report;
use orbit3::squaring::{gammal1_equivalent, gl_equivalent, Squaring};
use orbit3::Error;

#[derive(Parser)]
#[command(name = "orbit3", version, about = "3-orbit 2-groups from squarings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the 3-orbit 2-groups up to an order (e.g. 512 or 2^9)
    Classify {
        #[arg(long, value_parser = parse_order)]
        max_order: u64,
        #[arg(long)]
        json: bool,
    },
    /// Print the spec of a named group
    Construct {
        #[command(subcommand)]
        group: Named,
        #[arg(long, value_enum, default_value = "json", global = true)]
        format: Format,
    },
    /// Count automorphism orbits of a spec
    Orbits {
        #[arg(long)]
        spec: PathBuf,
        /// also run the brute-force oracle and compare
        #[arg(long)]
        oracle: bool,
    },
    /// Search for predata whose A contains no scalars
    SearchNonstandard {
        #[arg(long)]
        m: u32,
    },
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
    /// Decide equivalence of two squarings (files hold a spec, a squaring or PC text)
    Equiv {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        /// GL_m(2) × GL_n(2) instead of ΓL_1
        #[arg(long)]
        gl: bool,
        #[arg(long, default_value_t = 1 << 28)]
        budget: u64,
    },
    Export {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, value_enum)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum Named {
    /// A(n, Frob^k)
    #[command(name = "A")]
    A { n: u32, k: u32 },
    /// B(n, 1, ε); the second argument must be 1
    #[command(name = "B")]
    B { n: u32, theta: u32 },
    /// the exceptional B(3, θ, ε)
    #[command(name = "Bexc")]
    Bexc,
    Homocyclic { n: u32 },
    Q8,
}

#[derive(Subcommand)]
enum VerifyCmd {
    Numtheory {
        #[arg(long, default_value_t = 37)]
        max_m: u32,
    },
    Lemmas {
        #[arg(long, value_enum, default_value = "fast")]
        level: LevelArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Exhaustive,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Pc,
}

fn parse_order(s: &str) -> Result<u64, String> {
    let v = match s.split_once('^') {
        Some(("2", k)) => k.parse::<u32>().ok().filter(|&k| k < 63).map(|k| 1u64 << k),
        Some(_) => None,
        None => s.parse::<u64>().ok(),
    };
    v.ok_or_else(|| format!("expected an integer or 2^K, got {s:?}"))
}

enum Failure {
    Usage(String),
    Violation(Value),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse(_) | Error::Precondition(_) | Error::NotDivisor { .. } | Error::UnsupportedField { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Violation(json!({"error": e.to_string()})),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_spec(path: &Path) -> Result<GroupSpec, Failure> {
    let text = read(path)?;
    if text.trim_start().starts_with("pc") {
        return Ok(GroupSpec::parse_pc(&text)?);
    }
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_squaring(path: &Path) -> Result<Squaring, Failure> {
    let text = read(path)?;
    if let Ok(v) = serde_json::from_str::<Value>(&text) {
        if v.get("table").is_some() {
            let s: Squaring = serde_json::from_value(v).map_err(|e| Failure::Usage(e.to_string()))?;
            return Ok(Squaring::new(s.m, s.n, s.table)?);
        }
    }
    Ok(load_spec(path)?.squaring())
}

fn print(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).unwrap());
}

fn reports(rs: &[Report]) -> Result<(), Failure> {
    let v = serde_json::to_value(rs).unwrap();
    if rs.iter().all(Report::ok) {
        print(&v);
        Ok(())
    } else {
        Err(Failure::Violation(v))
    }
}

fn emit_spec(spec: &GroupSpec, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(spec).unwrap()),
        Format::Pc => print!("{}", spec.export_pc()),
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.cmd {
        Cmd::Classify { max_order, json } => {
            let t = classify::theorem_list(max_order)?;
            let bad = t.entries.iter().any(|e| e.orbit_count != 3 || e.oracle_orbit_count.is_some_and(|c| c != 3)) || !t.all_distinct();
            if json {
                print(&serde_json::to_value(&t).unwrap());
            } else {
                println!("{:<16} {:>6} {:>7} {:>7}  provenance", "label", "order", "orbits", "oracle");
                for e in &t.entries {
                    let oracle = e.oracle_orbit_count.map_or("-".to_string(), |c| c.to_string());
                    println!("{:<16} {:>6} {:>7} {:>7}  {}", e.entry.label.to_string(), e.entry.order, e.orbit_count, oracle, e.entry.provenance);
                }
                for (i, j, d) in &t.distinctions {
                    let (a, b) = (&t.entries[*i].entry, &t.entries[*j].entry);
                    if a.order == b.order {
                        match d {
                            Distinction::Order => println!("{} vs {}: differ in order", a.label, b.label),
                            Distinction::Profile(f) => println!("{} vs {}: differ in {f}", a.label, b.label),
                            Distinction::Undecided => println!("{} vs {}: undecided", a.label, b.label),
                        }
                    }
                }
            }
            if bad {
                return Err(Failure::Violation(json!({"error": "an entry failed its orbit count or could not be told apart"})));
            }
        }
        Cmd::Construct { group, format } => {
            let spec = match group {
                Named::A { n, k } => classify::construct_a(n, k)?,
                Named::B { n, theta: 1 } => classify::construct_b(n)?,
                Named::B { .. } => return Err(Failure::Usage("only B n 1 is supported".into())),
                Named::Bexc => classify::construct_exceptional(),
                Named::Homocyclic { n } => GroupSpec::homocyclic(n)?,
                Named::Q8 => GroupSpec::q8(),
            };
            emit_spec(&spec, format);
        }
        Cmd::Orbits { spec, oracle } => {
            let spec = load_spec(&spec)?;
            let fast = match group::orbit_count(&spec) {
                Ok(c) => Some(c),
                Err(Error::NotSpanning) => None,
                Err(e) => return Err(e.into()),
            };
            let brute = if oracle || fast.is_none() { Some(group::brute_force_orbits(&spec, 1 << 32)?) } else { None };
            let out = json!({"order": spec.order(), "orbits": fast.or(brute), "pairs_method": fast, "oracle": brute});
            if let (Some(a), Some(b)) = (fast, brute) {
                if a != b {
                    return Err(Failure::Violation(out));
                }
            }
            print(&out);
        }
        Cmd::SearchNonstandard { m } => {
            let out = classify::nonstandard_search(m)?;
            print(&serde_json::to_value(&out).unwrap());
        }
        Cmd::Verify { what: VerifyCmd::Numtheory { max_m } } => {
            if !(1..=62).contains(&max_m) {
                return Err(Failure::Usage("max-m must lie in 1..=62".into()));
            }
            reports(&[numtheory::verify_unexpected(max_m)?])?;
        }
        Cmd::Verify { what: VerifyCmd::Lemmas { level } } => {
            let level = match level {
                LevelArg::Fast => Level::Fast,
                LevelArg::Exhaustive => Level::Exhaustive,
            };
            reports(&lemmas::run_all(level)?)?;
        }
        Cmd::Equiv { a, b, gl, budget } => {
            let (sa, sb) = (load_squaring(&a)?, load_squaring(&b)?);
            if gl {
                match gl_equivalent(&sa, &sb, budget) {
                    Ok(w) => print(&json!({"relation": "GL", "equivalent": w.is_some(), "witness": w})),
                    Err(Error::Budget(n)) => return Err(Failure::Violation(json!({"relation": "GL", "equivalent": "undecided", "budget": n}))),
                    Err(e) => return Err(e.into()),
                }
            } else {
                let w = gammal1_equivalent(&sa, &sb)?;
                print(&json!({"relation": "GammaL1", "equivalent": w.is_some(), "witness": w}));
            }
        }
        Cmd::Export { spec, format } => emit_spec(&load_spec(&spec)?, format),
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation(v)) => {
            print(&v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
