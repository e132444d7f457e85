//! Command-line front end for the zero-point lab.
//!
//! Exit codes: 0 accept, 1 reject, 2 usage or I/O error.

pub mod profile;
pub mod vectors;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use zeropoint::curve::bn254_g1;
use zeropoint::{
    ecdsa_sign, ecdsa_verify, forge_zero_proof, prove, srs_setup, EcdsaParams, EcdsaPolicy,
    EcdsaSignature, FieldElement, ForgeryMode, ForgeryTemplate, JacobianPoint, Layout, Srs,
    Verifier, VerifierKey, U256,
};

pub use profile::ProfileSpec;

pub const EXIT_ACCEPT: i32 = 0;
pub const EXIT_REJECT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "zeropoint", version, about = "Zero-point forgery lab for a batched-KZG pairing verifier")]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    AllZero,
    ZeroW,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EcdsaPolicyArg {
    Vulnerable,
    Hardened,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a reference string and a verifier key.
    Setup {
        #[arg(long, default_value_t = 8)]
        degree: usize,
        #[arg(long, default_value_t = 16)]
        domain_size: u64,
        /// Commitments opened at z.
        #[arg(long, default_value_t = 2)]
        n_z: usize,
        /// Commitments opened at z * omega.
        #[arg(long, default_value_t = 1)]
        n_zw: usize,
        #[arg(long, default_value = "srs.bin")]
        srs: PathBuf,
        #[arg(long, default_value = "vk.bin")]
        vk: PathBuf,
    },
    /// Write an honest batched opening proof.
    Prove {
        #[arg(long, default_value = "srs.bin")]
        srs: PathBuf,
        #[arg(long, default_value = "vk.bin")]
        vk: PathBuf,
        /// Comma-separated coefficients, lowest first; repeat once per commitment.
        /// Random polynomials are used when omitted.
        #[arg(long = "poly")]
        polys: Vec<String>,
        /// Hex bytes absorbed before the proof.
        #[arg(long, default_value = "")]
        salt: String,
        #[arg(long, default_value = "proof.bin")]
        out: PathBuf,
    },
    /// Write a zero-point forgery for the key's layout.
    Forge {
        #[arg(long, default_value = "vk.bin")]
        vk: PathBuf,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value = "forged.bin")]
        out: PathBuf,
    },
    /// Verify a proof; exit 0 on accept, 1 on reject.
    Verify {
        #[arg(long, default_value = "vk.bin")]
        vk: PathBuf,
        #[arg(long, default_value = "vulnerable")]
        profile: ProfileSpec,
        #[arg(long, default_value = "")]
        salt: String,
        proof: PathBuf,
    },
    /// Verify and print every pipeline stage.
    Trace {
        #[arg(long, default_value = "vk.bin")]
        vk: PathBuf,
        #[arg(long, default_value = "vulnerable")]
        profile: ProfileSpec,
        #[arg(long, default_value = "")]
        salt: String,
        /// Replace P[0] before normalization with hex `x,y,z`.
        #[arg(long)]
        inject_p0: Option<String>,
        proof: PathBuf,
    },
    /// Run the (0, 0) signature and an honest round trip; exit code follows the (0, 0) verdict.
    EcdsaDemo {
        #[arg(long, value_enum, default_value = "vulnerable")]
        policy: EcdsaPolicyArg,
    },
    /// Emit the adversarial corpus as JSON lines.
    Vectors {
        #[arg(long)]
        out: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_ACCEPT };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

fn load_vk(path: &Path) -> Result<VerifierKey> {
    Ok(VerifierKey::from_bytes(&read(path)?)?)
}

fn parse_salt(s: &str) -> Result<Vec<u8>> {
    hex::decode(s.trim_start_matches("0x")).context("salt must be hex")
}

fn parse_scalar(tok: &str) -> Result<FieldElement> {
    let tok = tok.trim();
    let v = if let Some(h) = tok.strip_prefix("0x") {
        U256::from_hex(h)
    } else {
        U256::from_dec(tok)
    }
    .ok_or_else(|| anyhow!("bad coefficient '{tok}'"))?;
    Ok(bn254_g1().scalar_field().element(v)?)
}

fn parse_poly(s: &str) -> Result<Vec<FieldElement>> {
    s.split(',').map(parse_scalar).collect()
}

fn parse_p0(s: &str) -> Result<JacobianPoint> {
    let base = bn254_g1().base_field();
    let coords = s
        .split(',')
        .map(|t| {
            let t = t.trim();
            let v = U256::from_hex(t.strip_prefix("0x").unwrap_or(t)).ok_or_else(|| anyhow!("bad hex '{t}'"))?;
            Ok(base.element(v)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let [x, y, z] = coords[..] else { bail!("--inject-p0 needs three coordinates") };
    Ok(JacobianPoint::from_coords(x, y, z, bn254_g1())?)
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32> {
    let mut rng = ChaCha20Rng::seed_from_u64(cli.seed);
    match &cli.command {
        Command::Setup { degree, domain_size, n_z, n_zw, srs, vk } => {
            let s = srs_setup(*degree, None, &mut rng)?;
            let key = VerifierKey::new(&s, *domain_size, Layout { n_z: *n_z, n_zw: *n_zw })?;
            write(srs, &s.to_bytes())?;
            write(vk, &key.to_bytes())?;
            writeln!(out, "setup: degree {degree}, domain {domain_size}, layout {n_z}+{n_zw}")?;
            writeln!(out, "proof length: {} bytes", key.layout.proof_len())?;
            Ok(EXIT_ACCEPT)
        }
        Command::Prove { srs, vk, polys, salt, out: path } => {
            let s = Srs::from_bytes(&read(srs)?)?;
            let key = load_vk(vk)?;
            let n = key.layout.n_z + key.layout.n_zw;
            let all: Vec<Vec<FieldElement>> = if polys.is_empty() {
                let scalar = bn254_g1().scalar_field();
                (0..n)
                    .map(|_| (0..rng.random_range(2..=s.degree() + 1)).map(|_| scalar.random(&mut rng)).collect())
                    .collect()
            } else {
                if polys.len() != n {
                    bail!("key layout needs {n} polynomials, got {}", polys.len());
                }
                polys.iter().map(|p| parse_poly(p)).collect::<Result<_>>()?
            };
            let (pz, pzw) = all.split_at(key.layout.n_z);
            let proof = prove(&s, &key, pz, pzw, &parse_salt(salt)?)?;
            let bytes = proof.to_bytes();
            write(path, &bytes)?;
            writeln!(out, "proof: {} bytes -> {}", bytes.len(), path.display())?;
            Ok(EXIT_ACCEPT)
        }
        Command::Forge { vk, mode, out: path } => {
            let key = load_vk(vk)?;
            let mode = match mode {
                ModeArg::AllZero => ForgeryMode::AllZeroBytes,
                ModeArg::ZeroW => ForgeryMode::ZeroWOnly,
            };
            let bytes = forge_zero_proof(&ForgeryTemplate { layout: key.layout, mode }, &mut rng);
            write(path, &bytes)?;
            writeln!(out, "forged ({mode:?}): {} bytes -> {}", bytes.len(), path.display())?;
            Ok(EXIT_ACCEPT)
        }
        Command::Verify { vk, profile, salt, proof } => {
            let key = load_vk(vk)?;
            let outcome = Verifier::new(&key, profile.0).with_salt(&parse_salt(salt)?).verify(&read(proof)?)?;
            writeln!(out, "profile: {}", profile.0)?;
            writeln!(out, "{}", outcome.verdict)?;
            Ok(if outcome.verdict.is_accept() { EXIT_ACCEPT } else { EXIT_REJECT })
        }
        Command::Trace { vk, profile, salt, inject_p0, proof } => {
            let key = load_vk(vk)?;
            let mut verifier = Verifier::new(&key, profile.0).with_salt(&parse_salt(salt)?);
            if let Some(p0) = inject_p0 {
                verifier = verifier.with_p0_injection(parse_p0(p0)?);
            }
            let outcome = verifier.verify(&read(proof)?)?;
            write!(out, "{}", outcome.trace)?;
            Ok(if outcome.verdict.is_accept() { EXIT_ACCEPT } else { EXIT_REJECT })
        }
        Command::EcdsaDemo { policy } => ecdsa_demo(*policy, &mut rng, out),
        Command::Vectors { out: path } => {
            let records = vectors::generate(cli.seed)?;
            write(path, vectors::to_json_lines(&records)?.as_bytes())?;
            writeln!(out, "vectors: {} records -> {}", records.len(), path.display())?;
            Ok(EXIT_ACCEPT)
        }
    }
}

fn ecdsa_demo(policy: EcdsaPolicyArg, rng: &mut ChaCha20Rng, out: &mut dyn Write) -> Result<i32> {
    let policy = match policy {
        EcdsaPolicyArg::Vulnerable => EcdsaPolicy::VulnerableNoRangeCheck,
        EcdsaPolicyArg::Hardened => EcdsaPolicy::Hardened,
    };
    let params = EcdsaParams::bn254();
    let (d, q) = params.keygen(rng);
    let h = params.order().random(rng);
    let sig = ecdsa_sign(&params, &d, &h, rng)?;
    let honest = ecdsa_verify(&params, &q, &h, &sig, policy)?;
    let zero = ecdsa_verify(&params, &q, &h, &EcdsaSignature::zero(), policy)?;
    let label = |ok: bool| if ok { "ACCEPT" } else { "REJECT" };
    writeln!(out, "policy: {policy:?}")?;
    writeln!(out, "message hash: {:#x}", h.value())?;
    writeln!(out, "honest signature: {}", label(honest))?;
    writeln!(out, "(r, s) = (0, 0): {}", label(zero))?;
    if !honest {
        bail!("honest round trip failed");
    }
    Ok(if zero { EXIT_ACCEPT } else { EXIT_REJECT })
}
