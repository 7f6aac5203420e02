//! Command-line configuration.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::formats::Family;

pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Parser, Clone, Debug, PartialEq, Eq)]
#[command(name = "scatpoly", version, about = "Sweeps and certificates for scattered linearized polynomials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Classify and check φ_{m,σ} for every m in F_{q^t}*.
    SweepM {
        #[command(flatten)]
        field: FieldArgs,
        /// σ = q^J
        #[arg(long = "J", default_value_t = 1)]
        j: usize,
        /// Restrict the sweep to one m, by element index.
        #[arg(long)]
        m_index: Option<u64>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Graph stabilizer and right idealizer of one polynomial.
    Stabilizer {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Decide ΓL-equivalence of two polynomials (give --family twice).
    Equiv {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long = "family", required = true, num_args = 1)]
        families: Vec<Family>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Rank distribution of the code ⟨X, f⟩.
    RankSpectrum {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Weight distribution of the linear set of f.
    Weights {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Index-smallest m outside S_{q−1} ∪ S_{q+1} ∪ {N(m) = 1}.
    Witness {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Modulus, sizes and table status of F_{q^{2t}}.
    FieldInfo {
        #[command(flatten)]
        field: FieldArgs,
        #[command(flatten)]
        run: RunArgs,
    },
}

/// The field F_{q^n} with q = p^eps and n = 2t.
#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct FieldArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub eps: u32,
    #[arg(long)]
    pub t: u32,
}

/// One polynomial: a family descriptor, or φ_{m,σ} from --J and --m-index.
#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct PolyArgs {
    #[arg(long, conflicts_with = "m_index")]
    pub family: Option<Family>,
    #[arg(long = "J", default_value_t = 1)]
    pub j: usize,
    #[arg(long)]
    pub m_index: Option<u64>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args, Clone, Debug, PartialEq, Eq)]
pub struct RunArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads; results do not depend on this.
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Largest number of field elements an enumeration may visit.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Write the data stream here instead of stdout.
    #[arg(long)]
    pub out: Option<std::path::PathBuf>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::SweepM { .. } => "sweep-m",
            Command::Stabilizer { .. } => "stabilizer",
            Command::Equiv { .. } => "equiv",
            Command::RankSpectrum { .. } => "rank-spectrum",
            Command::Weights { .. } => "weights",
            Command::Witness { .. } => "witness",
            Command::FieldInfo { .. } => "field-info",
        }
    }

    pub fn field(&self) -> &FieldArgs {
        match self {
            Command::SweepM { field, .. }
            | Command::Stabilizer { field, .. }
            | Command::Equiv { field, .. }
            | Command::RankSpectrum { field, .. }
            | Command::Weights { field, .. }
            | Command::Witness { field, .. }
            | Command::FieldInfo { field, .. } => field,
        }
    }

    pub fn run(&self) -> &RunArgs {
        match self {
            Command::SweepM { run, .. }
            | Command::Stabilizer { run, .. }
            | Command::Equiv { run, .. }
            | Command::RankSpectrum { run, .. }
            | Command::Weights { run, .. }
            | Command::Witness { run, .. }
            | Command::FieldInfo { run, .. } => run,
        }
    }

    /// Flags that reproduce this command, in a fixed order.
    pub fn to_args(&self) -> Vec<String> {
        let mut a = vec![self.name().to_string()];
        let f = self.field();
        a.extend(["--p".into(), f.p.to_string(), "--eps".into(), f.eps.to_string(), "--t".into(), f.t.to_string()]);
        let poly = |a: &mut Vec<String>, p: &PolyArgs| {
            if let Some(fam) = &p.family {
                a.extend(["--family".into(), fam.to_string()]);
            }
            a.extend(["--J".into(), p.j.to_string()]);
            if let Some(m) = p.m_index {
                a.extend(["--m-index".into(), m.to_string()]);
            }
        };
        match self {
            Command::SweepM { j, m_index, .. } => {
                a.extend(["--J".into(), j.to_string()]);
                if let Some(m) = m_index {
                    a.extend(["--m-index".into(), m.to_string()]);
                }
            }
            Command::Stabilizer { poly: p, .. }
            | Command::RankSpectrum { poly: p, .. }
            | Command::Weights { poly: p, .. } => poly(&mut a, p),
            Command::Equiv { families, .. } => {
                for fam in families {
                    a.extend(["--family".into(), fam.to_string()]);
                }
            }
            Command::Witness { .. } | Command::FieldInfo { .. } => {}
        }
        let r = self.run();
        let fmt = match r.format {
            Format::Text => "text",
            Format::Json => "json",
            Format::Csv => "csv",
        };
        a.extend(["--format".into(), fmt.into(), "--budget".into(), r.budget.to_string()]);
        a
    }

    /// The echo line: every flag that can change the data stream.
    pub fn echo(&self) -> String {
        self.to_args().iter().map(|s| if s.contains(' ') { format!("{s:?}") } else { s.clone() }).collect::<Vec<_>>().join(" ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("scatpoly").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn flags_round_trip() {
        let cases: &[&[&str]] = &[
            &["sweep-m", "--p", "3", "--t", "3"],
            &["sweep-m", "--p", "5", "--t", "3", "--J", "5", "--m-index", "7", "--format", "csv"],
            &["stabilizer", "--p", "3", "--t", "5", "--m-index", "1"],
            &["equiv", "--p", "3", "--t", "5", "--family", "phi:t=5,J=1,m=1", "--family", "pr:10,1"],
            &["weights", "--p", "3", "--t", "3", "--family", "q-poly n=6 [1:1]", "--budget", "99"],
            &["rank-spectrum", "--p", "3", "--t", "3", "--family", "lp:6,1,delta=5"],
            &["witness", "--p", "7", "--t", "5", "--format", "json"],
            &["field-info", "--p", "3", "--eps", "2", "--t", "3"],
        ];
        for args in cases {
            let cli = parse(args);
            let again = Cli::try_parse_from(
                std::iter::once("scatpoly".to_string()).chain(cli.command.to_args()),
            )
            .unwrap();
            let mut expect = cli.clone();
            // workers and out are not echoed: they never change the data
            if let Some(r) = run_mut(&mut expect.command) {
                r.workers = 1;
                r.out = None;
            }
            assert_eq!(again, expect, "{args:?}");
        }
    }

    fn run_mut(c: &mut Command) -> Option<&mut RunArgs> {
        match c {
            Command::SweepM { run, .. }
            | Command::Stabilizer { run, .. }
            | Command::Equiv { run, .. }
            | Command::RankSpectrum { run, .. }
            | Command::Weights { run, .. }
            | Command::Witness { run, .. }
            | Command::FieldInfo { run, .. } => Some(run),
        }
    }

    #[test]
    fn family_and_m_index_conflict() {
        let r = Cli::try_parse_from(["scatpoly", "stabilizer", "--p", "3", "--t", "3", "--family", "pr:6,1", "--m-index", "1"]);
        assert!(r.is_err());
    }
}
