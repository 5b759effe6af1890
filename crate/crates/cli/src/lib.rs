//! Command-line front end. Decision commands exit 0 for yes and 1 for no;
//! usage and input errors exit 2.

use std::fmt;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ColorChoice, Parser, Subcommand};

use engelcov::engel::standard_labels;
use engelcov::engel_numeric::{twist_numeric_estimate, TorusEngelParams};
use engelcov::format::{write_covering, write_engel, FormatError, Loader};
use engelcov::{
    act, development_winding, engel, enumerate_trivial_bundle, eng_nonempty, eng_oriented_nonempty,
    exists_covering, homotopic, horizontal_distance, isomorphic, isotopic, verify_engel, CircleBundle,
};

#[derive(Parser, Debug)]
#[command(name = "engelcov", version, about = "Fiberwise coverings of circle bundles and fibered Engel structures", color = ColorChoice::Never)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integral cohomology of a complex (`builtin:t3`, `builtin:rp3` or a file).
    Cohomology {
        complex: String,
        #[arg(long)]
        degree: usize,
    },
    #[command(subcommand)]
    Covering(CoveringCommand),
    #[command(subcommand)]
    Engel(EngelCommand),
}

#[derive(Subcommand, Debug)]
enum CoveringCommand {
    /// Print a covering from `--eq` to `--ep` with `n` sheets, or `none`.
    Exists {
        #[arg(long = "eq")]
        source: PathBuf,
        #[arg(long = "ep")]
        target: PathBuf,
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
    },
    /// Horizontal distance in H¹.
    Distance {
        #[arg(long)]
        phi1: PathBuf,
        #[arg(long)]
        phi2: PathBuf,
    },
    Homotopic {
        #[arg(long)]
        phi1: PathBuf,
        #[arg(long)]
        phi2: PathBuf,
    },
    Isomorphic {
        #[arg(long)]
        phi1: PathBuf,
        #[arg(long)]
        phi2: PathBuf,
    },
    /// Act on a covering by a 1-cocycle.
    Act {
        #[arg(long)]
        alpha: PathBuf,
        #[arg(long)]
        phi: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum EngelCommand {
    /// Decide whether Engel structures with twisting number `n` exist.
    Classify {
        #[arg(long)]
        q: PathBuf,
        #[arg(long)]
        xi: PathBuf,
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
        /// Ask for oriented classes.
        #[arg(long)]
        oriented: bool,
        /// Write a representative class file here when one exists.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    Twist {
        #[arg(long)]
        d1: PathBuf,
        #[arg(long)]
        d2: PathBuf,
    },
    Isotopic {
        #[arg(long)]
        d1: PathBuf,
        #[arg(long)]
        d2: PathBuf,
    },
    /// Classes over the trivial bundle for twisting numbers ±1..±N.
    EnumerateTrivial {
        #[arg(long)]
        base: String,
        #[arg(long = "max-n")]
        max_n: u32,
    },
    /// Check the Engel condition for the torus family at seeded random points.
    VerifyTorus {
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        alpha: [i64; 3],
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Count the relative turns of two torus family members along a coordinate loop.
    TwistTorus {
        #[arg(short = 'n', allow_negative_numbers = true)]
        n: i64,
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        alpha: [i64; 3],
        #[arg(long, value_parser = parse_triple, allow_hyphen_values = true)]
        alpha2: [i64; 3],
        #[arg(long = "loop")]
        loop_index: usize,
        #[arg(long, default_value_t = 64)]
        samples: usize,
    },
}

fn parse_triple(s: &str) -> Result<[i64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated integers, got `{s}`"));
    }
    let mut out = [0; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.trim().parse().map_err(|_| format!("invalid integer `{p}`"))?;
    }
    Ok(out)
}

enum Failure {
    Format(FormatError),
    Core(engelcov::Error),
    Io(String),
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Format(e) => write!(f, "{e}"),
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        Failure::Format(e)
    }
}

impl From<engelcov::Error> for Failure {
    fn from(e: engelcov::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn decision(out: &mut dyn Write, yes: bool) -> Result<i32, Failure> {
    writeln!(out, "{yes}")?;
    Ok(if yes { 0 } else { 1 })
}

/// Runs the command line `args` (including the program name).
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    2
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut loader = Loader::new();
    match command {
        Command::Cohomology { complex, degree } => {
            let (x, _) = loader.complex(&complex, None)?;
            let h = x.cohomology(degree)?;
            writeln!(out, "H^{degree} = {}", h.signature(" + "))?;
            Ok(0)
        }
        Command::Covering(c) => covering(c, &mut loader, out),
        Command::Engel(c) => engel_command(c, &mut loader, out),
    }
}

fn covering(command: CoveringCommand, loader: &mut Loader, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        CoveringCommand::Exists { source, target, n } => {
            let (q, qref) = loader.bundle(&source)?;
            let (p, pref) = loader.bundle(&target)?;
            match exists_covering(&q, &p, n)? {
                Some(phi) => {
                    write!(out, "{}", write_covering(&qref, &pref, &phi))?;
                    Ok(0)
                }
                None => {
                    writeln!(out, "none")?;
                    Ok(1)
                }
            }
        }
        CoveringCommand::Distance { phi1, phi2 } => {
            let (a, b) = (loader.covering(&phi1)?, loader.covering(&phi2)?);
            let d = horizontal_distance(&a.covering, &b.covering)?;
            writeln!(out, "d = {d}")?;
            Ok(0)
        }
        CoveringCommand::Homotopic { phi1, phi2 } => {
            let (a, b) = (loader.covering(&phi1)?, loader.covering(&phi2)?);
            decision(out, homotopic(&a.covering, &b.covering)?)
        }
        CoveringCommand::Isomorphic { phi1, phi2 } => {
            let (a, b) = (loader.covering(&phi1)?, loader.covering(&phi2)?);
            decision(out, isomorphic(&a.covering, &b.covering)?)
        }
        CoveringCommand::Act { alpha, phi } => {
            let loaded = loader.covering(&phi)?;
            let z = loader.cochain(&alpha, loaded.covering.base())?;
            let moved = act(&z, &loaded.covering)?;
            write!(out, "{}", write_covering(&loaded.source_ref, &loaded.target_ref, &moved))?;
            Ok(0)
        }
    }
}

fn engel_command(command: EngelCommand, loader: &mut Loader, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        EngelCommand::Classify { q, xi, n, oriented, output } => {
            let (bundle, bref) = loader.bundle(&q)?;
            let (label, lref) = loader.label(&xi)?;
            let nonempty = eng_nonempty(&bundle, &label, n)?;
            let oriented_nonempty = eng_oriented_nonempty(&bundle, &label, n)?;
            writeln!(out, "nonempty={nonempty}")?;
            writeln!(out, "oriented={oriented_nonempty}")?;
            let yes = if oriented { oriented_nonempty } else { nonempty };
            if yes {
                let h1 = bundle.base().cohomology(1)?;
                writeln!(out, "torsor={}", h1.signature("+"))?;
                if let Some(path) = output {
                    let class = if oriented {
                        engel::make_oriented_engel_class(&bundle, &label, n)?
                    } else {
                        engel::make_engel_class(&bundle, &label, n)?
                    };
                    let class = class.expect("existence decided above");
                    fs::write(&path, write_engel(&bref, &lref, &class))?;
                }
            }
            Ok(if yes { 0 } else { 1 })
        }
        EngelCommand::Twist { d1, d2 } => {
            let (a, b) = (loader.engel(&d1)?, loader.engel(&d2)?);
            writeln!(out, "twist = {}", engel::twist(&a.class, &b.class)?)?;
            Ok(0)
        }
        EngelCommand::Isotopic { d1, d2 } => {
            let (a, b) = (loader.engel(&d1)?, loader.engel(&d2)?);
            decision(out, isotopic(&a.class, &b.class)?)
        }
        EngelCommand::EnumerateTrivial { base, max_n } => {
            if max_n == 0 {
                return Err(Failure::Core(engelcov::Error::Invalid("--max-n must be at least 1".into())));
            }
            let (x, _) = loader.complex(&base, None)?;
            let q = CircleBundle::trivial(&x)?;
            let labels = standard_labels(&x)?;
            let n = i64::from(max_n);
            let tws: Vec<i64> = (-n..=n).filter(|&k| k != 0).collect();
            write!(out, "{}", enumerate_trivial_bundle(&q, &tws, &labels)?)?;
            Ok(0)
        }
        EngelCommand::VerifyTorus { n, alpha, samples, seed } => {
            let report = verify_engel(&TorusEngelParams::new(n, alpha), samples, seed)?;
            write!(out, "{report}")?;
            Ok(if report.pass { 0 } else { 1 })
        }
        EngelCommand::TwistTorus { n, alpha, alpha2, loop_index, samples } => {
            let a = TorusEngelParams::new(n, alpha);
            let b = TorusEngelParams::new(n, alpha2);
            let est = twist_numeric_estimate::<f64>(&a, &b, loop_index, samples)?;
            writeln!(out, "twist_numeric {}", est.value)?;
            writeln!(out, "residual {:.11e}", est.residual)?;
            writeln!(out, "samples {}", est.samples)?;
            writeln!(out, "development_winding {}", development_winding(alpha, alpha2, loop_index)?)?;
            Ok(0)
        }
    }
}
