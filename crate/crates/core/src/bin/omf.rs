use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use om_factor::arith::Prime;
use om_factor::cli::{parse_poly, run, Command as Cmd, Request};
use std::io::Read;
use std::process::ExitCode;
use std::str::FromStr;

/// OM factorization of polynomials over Z_p: the Montes algorithm,
/// Okutsu invariants and factor lifting.
#[derive(Parser)]
#[command(name = "omf", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Prime p
    #[arg(long)]
    prime: String,
    /// Polynomial, as "x^4+5*x^2+25" or "[25,0,5,0,1]"
    #[arg(long)]
    poly: String,
    /// RNG seed (affects internal factoring only, never results)
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON (default)
    #[arg(long, conflicts_with = "text")]
    json: bool,
    /// Emit plain text
    #[arg(long)]
    text: bool,
}

#[derive(Subcommand)]
enum Command {
    /// OM factorization with lifted factors
    Factor {
        #[command(flatten)]
        common: Common,
        /// Target precision nu (default delta+1)
        #[arg(long)]
        precision: Option<i64>,
        /// Skip the lifting stage
        #[arg(long)]
        no_lift: bool,
    },
    /// Irreducibility test with witness
    Irreducible {
        #[command(flatten)]
        common: Common,
    },
    /// Okutsu invariants of an irreducible polynomial
    Invariants {
        #[command(flatten)]
        common: Common,
    },
    /// ASCII Newton polygon N_1 (or N_i given --level and a type JSON on stdin)
    Polygon {
        #[command(flatten)]
        common: Common,
        /// Polygon level; above 1 a serialized type is read from stdin
        #[arg(long, default_value_t = 1)]
        level: usize,
    },
}

fn build(common: &Common, cmd: Cmd, precision: Option<i64>, no_lift: bool, level: usize)
    -> Result<Request, String>
{
    let p = BigInt::from_str(&common.prime).map_err(|e| format!("bad prime: {e}"))?;
    let p = Prime::new(p).map_err(|e| e.to_string())?;
    let poly = parse_poly(&common.poly).map_err(|e| e.to_string())?;
    let type_json = if level > 1 {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| e.to_string())?;
        Some(serde_json::from_str(&buf).map_err(|e| format!("bad type JSON: {e}"))?)
    } else {
        None
    };
    Ok(Request {
        command: cmd,
        poly,
        p,
        precision,
        seed: common.seed,
        json: !common.text,
        no_lift,
        level,
        type_json,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let built = match &cli.command {
        Command::Factor { common, precision, no_lift } => {
            build(common, Cmd::Factor, *precision, *no_lift, 1)
        }
        Command::Irreducible { common } => build(common, Cmd::Irreducible, None, false, 1),
        Command::Invariants { common } => build(common, Cmd::Invariants, None, false, 1),
        Command::Polygon { common, level } => build(common, Cmd::Polygon, None, false, *level),
    };
    let req = match built {
        Ok(r) => r,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let (code, out) = run(&req);
    println!("{out}");
    ExitCode::from(code as u8)
}
