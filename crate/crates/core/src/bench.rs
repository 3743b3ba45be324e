//! Timing harness for the seven phases of each suite.
//!
//! Phases and what one timed iteration covers:
//!
//! - `KeyGen`: recipient key generation (ECDH, KEM, or both for hybrids)
//! - `KekEncrypt` / `KekDecrypt`: key establishment only (ephemeral ECDH
//!   and/or encapsulation; shared-x and/or decapsulation)
//! - `DekEncrypt` / `DekDecrypt`: the full wrap / unwrap of the DEK
//!   (key establishment + KDF + XOR + MAC)
//! - `DataEncrypt` / `DataDecrypt`: AEAD over `payload_len` bytes under the DEK
//!
//! Inputs are prepared before timing starts; each phase is preceded by
//! [`WARMUP_ITERATIONS`] untimed runs.

use std::fmt;
use std::fmt::Write as _;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use rand_core::{CryptoRng, RngCore};

use crate::error::{Error, Result};
use crate::primitives::{AeadAlg, KekMechanism, SuiteDescriptor};
use crate::schemes::{self, Dek};

pub const WARMUP_ITERATIONS: usize = 10;
pub const DEFAULT_PAYLOAD_LEN: usize = 1024;
pub const CSV_HEADER: &str = "suite,phase,iterations,payload_len,mean_ms,median_ms,p95_ms,stddev_ms";

/// Shared info used for every benchmarked wrap: 32 bytes, the size of a
/// request-message hash.
const BENCH_INFO: [u8; 32] = [0x5c; 32];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Phase {
    KeyGen,
    KekEncrypt,
    KekDecrypt,
    DekEncrypt,
    DekDecrypt,
    DataEncrypt,
    DataDecrypt,
}

impl Phase {
    pub const ALL: [Phase; 7] = [
        Phase::KeyGen,
        Phase::KekEncrypt,
        Phase::KekDecrypt,
        Phase::DekEncrypt,
        Phase::DekDecrypt,
        Phase::DataEncrypt,
        Phase::DataDecrypt,
    ];

    /// The four phases with a published encryption-side comparison.
    pub const ENCRYPT: [Phase; 4] = [Phase::KeyGen, Phase::KekEncrypt, Phase::DekEncrypt, Phase::DataEncrypt];

    pub fn name(self) -> &'static str {
        match self {
            Phase::KeyGen => "KeyGen",
            Phase::KekEncrypt => "KekEncrypt",
            Phase::KekDecrypt => "KekDecrypt",
            Phase::DekEncrypt => "DekEncrypt",
            Phase::DekDecrypt => "DekDecrypt",
            Phase::DataEncrypt => "DataEncrypt",
            Phase::DataDecrypt => "DataDecrypt",
        }
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Phase {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Phase::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown phase {s:?}"))
    }
}

/// Monotonic nanosecond clock, injectable for tests.
pub trait Clock {
    fn now_ns(&mut self) -> u64;
}

#[derive(Clone, Copy, Debug)]
pub struct MonotonicClock(Instant);

impl Default for MonotonicClock {
    fn default() -> Self {
        Self(Instant::now())
    }
}

impl Clock for MonotonicClock {
    fn now_ns(&mut self) -> u64 {
        self.0.elapsed().as_nanos() as u64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PhaseStats {
    pub suite_id: u8,
    pub phase: Phase,
    pub iterations: usize,
    pub payload_len: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub p95_ms: f64,
    pub stddev_ms: f64,
}

impl PhaseStats {
    /// Mean, median, nearest-rank 95th percentile and population standard
    /// deviation of `samples_ms`.
    pub fn from_samples(suite_id: u8, phase: Phase, payload_len: usize, samples_ms: &[f64]) -> Result<Self> {
        if samples_ms.is_empty() {
            return Err(Error::NoIterations);
        }
        let n = samples_ms.len();
        let mut sorted = samples_ms.to_vec();
        sorted.sort_by(f64::total_cmp);
        let mean = sorted.iter().sum::<f64>() / n as f64;
        let median = if n % 2 == 1 {
            sorted[n / 2]
        } else {
            (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0
        };
        let rank = ((0.95 * n as f64).ceil() as usize).clamp(1, n);
        let p95 = sorted[rank - 1];
        let var = sorted.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n as f64;
        Ok(Self {
            suite_id,
            phase,
            iterations: n,
            payload_len,
            mean_ms: mean,
            median_ms: median,
            p95_ms: p95,
            stddev_ms: var.sqrt(),
        })
    }
}

/// Runs `op` untimed [`WARMUP_ITERATIONS`] times, then `iterations` times
/// with a clock reading on either side of each call. Returns per-call
/// durations in milliseconds.
pub fn time_iterations<C: Clock + ?Sized>(
    clock: &mut C,
    iterations: usize,
    mut op: impl FnMut() -> Result<()>,
) -> Result<Vec<f64>> {
    if iterations == 0 {
        return Err(Error::NoIterations);
    }
    for _ in 0..WARMUP_ITERATIONS {
        op()?;
    }
    let mut samples = Vec::with_capacity(iterations);
    for _ in 0..iterations {
        let start = clock.now_ns();
        op()?;
        let end = clock.now_ns();
        samples.push(end.saturating_sub(start) as f64 / 1e6);
    }
    Ok(samples)
}

/// Times one phase of one suite on the system monotonic clock.
pub fn measure_phase<R: RngCore + CryptoRng>(
    suite: &SuiteDescriptor,
    phase: Phase,
    iterations: usize,
    payload_len: usize,
    rng: &mut R,
) -> Result<PhaseStats> {
    measure_phase_with_clock(suite, phase, iterations, payload_len, rng, &mut MonotonicClock::default())
}

pub fn measure_phase_with_clock<R: RngCore + CryptoRng, C: Clock + ?Sized>(
    suite: &SuiteDescriptor,
    phase: Phase,
    iterations: usize,
    payload_len: usize,
    rng: &mut R,
    clock: &mut C,
) -> Result<PhaseStats> {
    if iterations == 0 {
        return Err(Error::NoIterations);
    }
    let (pk, sk) = schemes::generate_recipient(suite.kek_mechanism, rng)?;
    let dek = Dek::generate(rng)?;
    let info = &BENCH_INFO[..];

    let samples = match phase {
        Phase::KeyGen => time_iterations(clock, iterations, || {
            black_box(schemes::generate_recipient(suite.kek_mechanism, rng)?);
            Ok(())
        })?,
        Phase::KekEncrypt => time_iterations(clock, iterations, || {
            black_box(schemes::establish_kek(&pk, suite, rng)?);
            Ok(())
        })?,
        Phase::KekDecrypt => {
            let (_, kek) = schemes::establish_kek(&pk, suite, rng)?;
            time_iterations(clock, iterations, || {
                black_box(schemes::recover_kek(&sk, &kek, suite)?);
                Ok(())
            })?
        }
        Phase::DekEncrypt => time_iterations(clock, iterations, || {
            black_box(schemes::wrap(&pk, info, &dek, suite, rng)?);
            Ok(())
        })?,
        Phase::DekDecrypt => {
            let wrapped = schemes::wrap(&pk, info, &dek, suite, rng)?;
            time_iterations(clock, iterations, || {
                black_box(schemes::unwrap(&sk, &wrapped, info, suite)?);
                Ok(())
            })?
        }
        Phase::DataEncrypt | Phase::DataDecrypt => {
            let mut payload = vec![0u8; payload_len];
            rng.fill_bytes(&mut payload);
            // One nonce for every iteration: the output is discarded, and
            // drawing fresh nonces would time the RNG as well.
            let mut nonce = vec![0u8; suite.nonce_len];
            rng.fill_bytes(&mut nonce);
            let aead = suite.aead_alg;
            if phase == Phase::DataEncrypt {
                time_iterations(clock, iterations, || {
                    black_box(aead.seal(dek.as_bytes(), &nonce, b"", black_box(&payload))?);
                    Ok(())
                })?
            } else {
                let sealed = aead.seal(dek.as_bytes(), &nonce, b"", &payload)?;
                time_iterations(clock, iterations, || {
                    black_box(aead.open(dek.as_bytes(), &nonce, b"", black_box(&sealed))?);
                    Ok(())
                })?
            }
        }
    };
    let payload = if matches!(phase, Phase::DataEncrypt | Phase::DataDecrypt) {
        payload_len
    } else {
        0
    };
    PhaseStats::from_samples(suite.suite_id, phase, payload, &samples)
}

/// One row per (suite, phase), suites outer, in the order given. Runs on the
/// calling thread only.
pub fn run_matrix<R: RngCore + CryptoRng>(
    suites: &[SuiteDescriptor],
    phases: &[Phase],
    iterations: usize,
    payload_len: usize,
    rng: &mut R,
) -> Result<Vec<PhaseStats>> {
    let mut out = Vec::with_capacity(suites.len() * phases.len());
    for suite in suites {
        for &phase in phases {
            out.push(measure_phase(suite, phase, iterations, payload_len, rng)?);
        }
    }
    Ok(out)
}

pub fn report_csv(stats: &[PhaseStats]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in stats {
        let _ = writeln!(
            out,
            "0x{:02x},{},{},{},{:.6},{:.6},{:.6},{:.6}",
            s.suite_id, s.phase, s.iterations, s.payload_len, s.mean_ms, s.median_ms, s.p95_ms, s.stddev_ms
        );
    }
    out
}

pub fn parse_csv(text: &str) -> Result<Vec<PhaseStats>> {
    let mut lines = text.lines();
    if lines.next().map(str::trim) != Some(CSV_HEADER) {
        return Err(Error::BadCsv("missing header".into()));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(i, line)| {
            let bad = |what: &str| Error::BadCsv(format!("row {}: {what}", i + 1));
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 8 {
                return Err(bad("expected 8 fields"));
            }
            let num = |s: &str| s.parse::<f64>().map_err(|_| bad("bad number"));
            Ok(PhaseStats {
                suite_id: crate::primitives::parse_suite_id(f[0]).map_err(|e| bad(&e))?,
                phase: f[1].parse().map_err(|e: String| bad(&e))?,
                iterations: f[2].parse().map_err(|_| bad("bad iterations"))?,
                payload_len: f[3].parse().map_err(|_| bad("bad payload_len"))?,
                mean_ms: num(f[4])?,
                median_ms: num(f[5])?,
                p95_ms: num(f[6])?,
                stddev_ms: num(f[7])?,
            })
        })
        .collect()
}

/// Fixed-width table for terminals.
pub fn report_table(stats: &[PhaseStats]) -> String {
    let mut out = format!(
        "{:<6} {:<12} {:>10} {:>12} {:>12} {:>12} {:>12}\n",
        "suite", "phase", "iters", "mean ms", "median ms", "p95 ms", "stddev ms"
    );
    for s in stats {
        let _ = writeln!(
            out,
            "0x{:02x}   {:<12} {:>10} {:>12.6} {:>12.6} {:>12.6} {:>12.6}",
            s.suite_id, s.phase.name(), s.iterations, s.mean_ms, s.median_ms, s.p95_ms, s.stddev_ms
        );
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FindingStatus {
    Pass,
    Warn,
    NotMeasured,
}

impl fmt::Display for FindingStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FindingStatus::Pass => "PASS",
            FindingStatus::Warn => "WARN",
            FindingStatus::NotMeasured => "N/A",
        })
    }
}

/// A relative claim checked against measured data.
#[derive(Clone, Debug, PartialEq)]
pub struct Finding {
    pub claim: String,
    pub status: FindingStatus,
    pub detail: String,
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {} ({})", self.status, self.claim, self.detail)
    }
}

fn mean_of(stats: &[PhaseStats], suite_id: u8, phase: Phase) -> Option<f64> {
    stats
        .iter()
        .find(|s| s.suite_id == suite_id && s.phase == phase)
        .map(|s| s.mean_ms)
}

fn not_measured(claim: String) -> Finding {
    Finding {
        claim,
        status: FindingStatus::NotMeasured,
        detail: "required rows missing".into(),
    }
}

/// Hybrid KekEncrypt mean against the sum of the ECIES and KEM-IES means;
/// passes when the ratio is within `1 +- tolerance`.
pub fn hybrid_additivity(stats: &[PhaseStats], hybrid: u8, ecies: u8, kemies: u8, tolerance: f64) -> Finding {
    let claim = format!("KekEncrypt 0x{hybrid:02x} ~ 0x{ecies:02x} + 0x{kemies:02x}");
    let (Some(h), Some(e), Some(k)) = (
        mean_of(stats, hybrid, Phase::KekEncrypt),
        mean_of(stats, ecies, Phase::KekEncrypt),
        mean_of(stats, kemies, Phase::KekEncrypt),
    ) else {
        return not_measured(claim);
    };
    let ratio = h / (e + k);
    Finding {
        claim,
        status: if (ratio - 1.0).abs() <= tolerance {
            FindingStatus::Pass
        } else {
            FindingStatus::Warn
        },
        detail: format!("hybrid {h:.6} ms, sum {:.6} ms, ratio {ratio:.3}, tolerance {tolerance}", e + k),
    }
}

/// Ordering claims: ML-KEM-512 has the fastest keygen + KEK encryption and
/// HQC-128 the slowest among the single mechanisms; Ascon-AEAD128 encrypts
/// data faster than AES-128-CCM. `suites` resolves suite ids in `stats`.
pub fn ordering_findings(stats: &[PhaseStats], suites: &[SuiteDescriptor]) -> Vec<Finding> {
    let mut out = Vec::new();

    let base = [KekMechanism::EcdhP256, KekMechanism::MlKem512, KekMechanism::Hqc128];
    let cost = |mech: KekMechanism| {
        suites.iter().filter(|s| s.kek_mechanism == mech).find_map(|s| {
            Some(mean_of(stats, s.suite_id, Phase::KeyGen)? + mean_of(stats, s.suite_id, Phase::KekEncrypt)?)
        })
    };
    let costs: Vec<Option<f64>> = base.iter().map(|&m| cost(m)).collect();
    let claims = [
        "ML-KEM-512 keygen + KEK encryption fastest among mechanisms",
        "HQC-128 keygen + KEK encryption slowest among mechanisms",
    ];
    if let [Some(ecdh), Some(mlkem), Some(hqc)] = costs[..] {
        let detail = format!("ECDH-P256 {ecdh:.6} ms, ML-KEM-512 {mlkem:.6} ms, HQC-128 {hqc:.6} ms");
        let status = |ok: bool| if ok { FindingStatus::Pass } else { FindingStatus::Warn };
        out.push(Finding {
            claim: claims[0].into(),
            status: status(mlkem < ecdh && mlkem < hqc),
            detail: detail.clone(),
        });
        out.push(Finding {
            claim: claims[1].into(),
            status: status(hqc > ecdh && hqc > mlkem),
            detail,
        });
    } else {
        out.extend(claims.iter().map(|c| not_measured((*c).into())));
    }

    let claim = "Ascon-AEAD128 data encryption faster than AES-128-CCM (environment-dependent: AES hardware instructions favour AES)";
    let avg = |alg: AeadAlg| {
        let v: Vec<f64> = suites
            .iter()
            .filter(|s| s.aead_alg == alg)
            .filter_map(|s| mean_of(stats, s.suite_id, Phase::DataEncrypt))
            .collect();
        (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
    };
    match (avg(AeadAlg::AsconAead128), avg(AeadAlg::Aes128Ccm)) {
        (Some(ascon), Some(aes)) => out.push(Finding {
            claim: claim.into(),
            status: if ascon < aes {
                FindingStatus::Pass
            } else {
                FindingStatus::Warn
            },
            detail: format!("Ascon {ascon:.6} ms, AES-CCM {aes:.6} ms"),
        }),
        _ => out.push(not_measured(claim.into())),
    }
    out
}
