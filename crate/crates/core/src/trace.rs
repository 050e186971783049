//! Traffic traces: parse classic pcap captures or synthesize desk-scale
//! traces from per-class statistical profiles.
//!
//! Timestamps are kept as integer nanoseconds since trace start so that
//! scheduling arithmetic and file round-trips stay exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default MTU bound for synthesized payloads, in bytes.
pub const DEFAULT_MTU: usize = 1500;

pub const NANOS_PER_SEC: u64 = 1_000_000_000;

#[derive(Debug, Error)]
pub enum TraceError {
    #[error("unrecognized pcap magic number 0x{0:08x}")]
    BadMagic(u32),
    #[error("pcap data truncated: {0}")]
    Truncated(&'static str),
    #[error("degenerate profile: {0}")]
    DegenerateProfile(String),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
}

/// One captured or synthesized packet, timestamped relative to trace start.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PacketRecord {
    pub timestamp_ns: u64,
    pub payload: Vec<u8>,
}

impl PacketRecord {
    pub fn timestamp_secs(&self) -> f64 {
        self.timestamp_ns as f64 / NANOS_PER_SEC as f64
    }
}

/// Time-ordered packet records plus the class identity that generated them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrafficTrace {
    pub records: Vec<PacketRecord>,
    pub class_label: String,
    pub duration_ns: u64,
}

impl TrafficTrace {
    pub fn duration_secs(&self) -> f64 {
        self.duration_ns as f64 / NANOS_PER_SEC as f64
    }

    /// Checks the trace invariants: ordering, time bounds, payload sizes.
    pub fn validate(&self, mtu: usize) -> Result<(), TraceError> {
        let mut prev = 0u64;
        for (i, rec) in self.records.iter().enumerate() {
            if rec.timestamp_ns < prev {
                return Err(TraceError::InvalidTrace(format!(
                    "record {i} timestamp decreases"
                )));
            }
            if rec.timestamp_ns > self.duration_ns {
                return Err(TraceError::InvalidTrace(format!(
                    "record {i} timestamp past duration"
                )));
            }
            if rec.payload.is_empty() {
                return Err(TraceError::InvalidTrace(format!("record {i} empty payload")));
            }
            if rec.payload.len() > mtu {
                return Err(TraceError::InvalidTrace(format!(
                    "record {i} payload {} exceeds mtu {mtu}",
                    rec.payload.len()
                )));
            }
            prev = rec.timestamp_ns;
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Classic pcap
// ---------------------------------------------------------------------------

const MAGIC_US_BE: u32 = 0xa1b2_c3d4;
const MAGIC_US_LE: u32 = 0xd4c3_b2a1;
const MAGIC_NS_BE: u32 = 0xa1b2_3c4d;
const MAGIC_NS_LE: u32 = 0x4d3c_b2a1;

struct PcapFlavor {
    little_endian: bool,
    nanosecond: bool,
}

fn read_u32(bytes: &[u8], off: usize, le: bool) -> u32 {
    let b = [bytes[off], bytes[off + 1], bytes[off + 2], bytes[off + 3]];
    if le {
        u32::from_le_bytes(b)
    } else {
        u32::from_be_bytes(b)
    }
}

/// Parses a classic pcap file into a trace with timestamps rebased to t=0.
///
/// Accepts the microsecond magic (0xa1b2c3d4) and the nanosecond magic
/// (0xa1b23c4d) in either byte order. Link-layer bytes are kept verbatim
/// as the payload. pcapng is rejected as a bad magic.
pub fn parse_pcap(bytes: &[u8]) -> Result<TrafficTrace, TraceError> {
    if bytes.len() < 24 {
        return Err(TraceError::Truncated("global header"));
    }
    let raw_magic = u32::from_be_bytes([bytes[0], bytes[1], bytes[2], bytes[3]]);
    let flavor = match raw_magic {
        MAGIC_US_BE => PcapFlavor { little_endian: false, nanosecond: false },
        MAGIC_US_LE => PcapFlavor { little_endian: true, nanosecond: false },
        MAGIC_NS_BE => PcapFlavor { little_endian: false, nanosecond: true },
        MAGIC_NS_LE => PcapFlavor { little_endian: true, nanosecond: true },
        other => return Err(TraceError::BadMagic(other)),
    };
    let le = flavor.little_endian;
    let frac_scale: u64 = if flavor.nanosecond { 1 } else { 1_000 };

    let mut absolute: Vec<(u64, Vec<u8>)> = Vec::new();
    let mut off = 24usize;
    while off < bytes.len() {
        if off + 16 > bytes.len() {
            return Err(TraceError::Truncated("record header"));
        }
        let ts_sec = read_u32(bytes, off, le) as u64;
        let ts_frac = read_u32(bytes, off + 4, le) as u64;
        let incl_len = read_u32(bytes, off + 8, le) as usize;
        off += 16;
        if off + incl_len > bytes.len() {
            return Err(TraceError::Truncated("record body"));
        }
        let ts_ns = ts_sec * NANOS_PER_SEC + ts_frac * frac_scale;
        absolute.push((ts_ns, bytes[off..off + incl_len].to_vec()));
        off += incl_len;
    }

    // Sort (stable) then rebase to the earliest timestamp, so the trace
    // ordering invariant holds even for captures with timestamp jitter.
    absolute.sort_by_key(|(ts, _)| *ts);
    let base = absolute.first().map(|(ts, _)| *ts).unwrap_or(0);
    let records: Vec<PacketRecord> = absolute
        .into_iter()
        .map(|(ts, payload)| PacketRecord { timestamp_ns: ts - base, payload })
        .collect();
    let duration_ns = records.last().map(|r| r.timestamp_ns).unwrap_or(0);

    Ok(TrafficTrace { records, class_label: "capture".to_string(), duration_ns })
}

/// Writes a trace as a classic pcap file using the nanosecond magic, so
/// `parse_pcap` round-trips timestamps exactly. Test-side inverse of
/// `parse_pcap`; link type is recorded as raw (101).
pub fn write_pcap(trace: &TrafficTrace) -> Vec<u8> {
    let mut out = Vec::with_capacity(24 + trace.records.len() * 32);
    out.extend_from_slice(&MAGIC_NS_BE.to_le_bytes());
    out.extend_from_slice(&2u16.to_le_bytes()); // version major
    out.extend_from_slice(&4u16.to_le_bytes()); // version minor
    out.extend_from_slice(&0i32.to_le_bytes()); // thiszone
    out.extend_from_slice(&0u32.to_le_bytes()); // sigfigs
    out.extend_from_slice(&65535u32.to_le_bytes()); // snaplen
    out.extend_from_slice(&101u32.to_le_bytes()); // network: raw IP
    for rec in &trace.records {
        let sec = (rec.timestamp_ns / NANOS_PER_SEC) as u32;
        let nsec = (rec.timestamp_ns % NANOS_PER_SEC) as u32;
        out.extend_from_slice(&sec.to_le_bytes());
        out.extend_from_slice(&nsec.to_le_bytes());
        out.extend_from_slice(&(rec.payload.len() as u32).to_le_bytes());
        out.extend_from_slice(&(rec.payload.len() as u32).to_le_bytes());
        out.extend_from_slice(&rec.payload);
    }
    out
}

// ---------------------------------------------------------------------------
// Synthetic profiles
// ---------------------------------------------------------------------------

/// Packet size distribution, in bytes.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SizeDistribution {
    Fixed { bytes: usize },
    UniformRange { min: usize, max: usize },
    Bimodal { small: usize, large: usize, large_prob: f64 },
}

/// Inter-arrival process. Times are in seconds.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ArrivalProcess {
    Periodic { interval_s: f64 },
    Exponential { mean_s: f64 },
    /// Periodic packets at `intra_interval_s` during bursts of
    /// `burst_s`, separated by `idle_s` of silence.
    OnOffBurst { burst_s: f64, idle_s: f64, intra_interval_s: f64 },
}

/// Statistical stand-in for one application's capture.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClassProfile {
    pub name: String,
    pub packet_sizes: SizeDistribution,
    pub arrivals: ArrivalProcess,
    /// Fraction of time the source is active. For periodic/exponential
    /// arrivals an activity gate (period 100 ms) pauses the process during
    /// the off span; on/off bursts carry their own duty and ignore the gate.
    pub duty_cycle: f64,
}

impl ClassProfile {
    pub fn validate(&self) -> Result<(), TraceError> {
        if !(0.0..=1.0).contains(&self.duty_cycle) {
            return Err(TraceError::InvalidProfile(format!(
                "duty_cycle {} outside [0, 1]",
                self.duty_cycle
            )));
        }
        match &self.packet_sizes {
            SizeDistribution::Fixed { bytes } => {
                if *bytes == 0 || *bytes > DEFAULT_MTU {
                    return Err(TraceError::InvalidProfile("fixed size out of range".into()));
                }
            }
            SizeDistribution::UniformRange { min, max } => {
                if *min == 0 || max < min || *max > DEFAULT_MTU {
                    return Err(TraceError::InvalidProfile("uniform range invalid".into()));
                }
            }
            SizeDistribution::Bimodal { small, large, large_prob } => {
                if *small == 0 || *large == 0 || *large > DEFAULT_MTU || !(0.0..=1.0).contains(large_prob) {
                    return Err(TraceError::InvalidProfile("bimodal parameters invalid".into()));
                }
            }
        }
        match &self.arrivals {
            ArrivalProcess::Periodic { interval_s } => {
                if *interval_s <= 0.0 {
                    return Err(TraceError::InvalidProfile("periodic interval must be > 0".into()));
                }
            }
            ArrivalProcess::Exponential { mean_s } => {
                if *mean_s <= 0.0 {
                    return Err(TraceError::InvalidProfile("exponential mean must be > 0".into()));
                }
            }
            ArrivalProcess::OnOffBurst { burst_s, idle_s, intra_interval_s } => {
                if *burst_s <= 0.0 || *idle_s <= 0.0 || *intra_interval_s <= 0.0 {
                    return Err(TraceError::InvalidProfile("on-off parameters must be > 0".into()));
                }
            }
        }
        Ok(())
    }

    /// Analytic mean packet rate in packets/second.
    pub fn analytic_mean_rate(&self) -> f64 {
        match &self.arrivals {
            ArrivalProcess::Periodic { interval_s } => self.duty_cycle / interval_s,
            ArrivalProcess::Exponential { mean_s } => self.duty_cycle / mean_s,
            ArrivalProcess::OnOffBurst { burst_s, idle_s, intra_interval_s } => {
                let per_burst = (burst_s / intra_interval_s).ceil();
                per_burst / (burst_s + idle_s)
            }
        }
    }
}

/// Gate period for duty-cycled periodic/exponential sources.
const GATE_PERIOD_S: f64 = 0.1;

/// Maps active-process time to wall time by inserting the off spans of the
/// duty gate, so the mean rate scales by exactly `duty` without aliasing.
fn active_to_wall(tau: f64, duty: f64) -> f64 {
    if duty >= 1.0 {
        return tau;
    }
    let active_span = duty * GATE_PERIOD_S;
    let k = (tau / active_span).floor();
    let r = tau - k * active_span;
    k * GATE_PERIOD_S + r
}

fn draw_size(sizes: &SizeDistribution, rng: &mut ChaCha8Rng) -> usize {
    match sizes {
        SizeDistribution::Fixed { bytes } => *bytes,
        SizeDistribution::UniformRange { min, max } => rng.gen_range(*min..=*max),
        SizeDistribution::Bimodal { small, large, large_prob } => {
            if rng.gen::<f64>() < *large_prob {
                *large
            } else {
                *small
            }
        }
    }
}

/// Synthesizes a deterministic trace for the given profile and seed.
pub fn synth_trace(
    profile: &ClassProfile,
    duration_s: f64,
    seed: u64,
) -> Result<TrafficTrace, TraceError> {
    if duration_s <= 0.0 {
        return Err(TraceError::InvalidTrace("duration must be > 0".into()));
    }
    profile.validate()?;
    if profile.duty_cycle == 0.0 {
        if matches!(profile.arrivals, ArrivalProcess::Periodic { .. }) {
            return Err(TraceError::DegenerateProfile(format!(
                "profile '{}' is periodic with duty_cycle 0",
                profile.name
            )));
        }
        return Ok(TrafficTrace {
            records: Vec::new(),
            class_label: profile.name.clone(),
            duration_ns: (duration_s * NANOS_PER_SEC as f64).ceil() as u64,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let duration_ns = (duration_s * NANOS_PER_SEC as f64).ceil() as u64;
    let mut times_s: Vec<f64> = Vec::new();

    match &profile.arrivals {
        ArrivalProcess::Periodic { interval_s } => {
            let active_total = duration_s * profile.duty_cycle;
            let mut tau = 0.0;
            while tau < active_total {
                let t = active_to_wall(tau, profile.duty_cycle);
                if t >= duration_s {
                    break;
                }
                times_s.push(t);
                tau += interval_s;
            }
        }
        ArrivalProcess::Exponential { mean_s } => {
            let exp = Exp::new(1.0 / mean_s).expect("validated mean > 0");
            let active_total = duration_s * profile.duty_cycle;
            let mut tau = exp.sample(&mut rng);
            while tau < active_total {
                let t = active_to_wall(tau, profile.duty_cycle);
                if t >= duration_s {
                    break;
                }
                times_s.push(t);
                tau += exp.sample(&mut rng);
            }
        }
        ArrivalProcess::OnOffBurst { burst_s, idle_s, intra_interval_s } => {
            let cycle = burst_s + idle_s;
            let mut cycle_start = 0.0;
            while cycle_start < duration_s {
                let mut t = cycle_start;
                while t < cycle_start + burst_s && t < duration_s {
                    times_s.push(t);
                    t += intra_interval_s;
                }
                cycle_start += cycle;
            }
        }
    }

    let records: Vec<PacketRecord> = times_s
        .into_iter()
        .map(|t| {
            let size = draw_size(&profile.packet_sizes, &mut rng);
            let mut payload = vec![0u8; size];
            rng.fill(payload.as_mut_slice());
            PacketRecord {
                timestamp_ns: (t * NANOS_PER_SEC as f64).round() as u64,
                payload,
            }
        })
        .collect();

    let trace = TrafficTrace { records, class_label: profile.name.clone(), duration_ns };
    trace.validate(DEFAULT_MTU)?;
    Ok(trace)
}

/// Mixes a low-rate background profile into `trace`: roughly
/// `fraction` of the resulting packets come from the background source.
pub fn mix_background(
    trace: &TrafficTrace,
    background: &ClassProfile,
    fraction: f64,
    seed: u64,
) -> Result<TrafficTrace, TraceError> {
    if fraction <= 0.0 || trace.records.is_empty() {
        return Ok(trace.clone());
    }
    background.validate()?;
    let n_main = trace.records.len();
    let n_bg = ((n_main as f64) * fraction / (1.0 - fraction)).round() as usize;
    if n_bg == 0 {
        return Ok(trace.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6261_636b_6772_6e64);
    let mut extra: Vec<PacketRecord> = (0..n_bg)
        .map(|_| {
            let t = rng.gen_range(0..trace.duration_ns.max(1));
            let size = draw_size(&background.packet_sizes, &mut rng);
            let mut payload = vec![0u8; size];
            rng.fill(payload.as_mut_slice());
            PacketRecord { timestamp_ns: t, payload }
        })
        .collect();
    let mut records = trace.records.clone();
    records.append(&mut extra);
    records.sort_by_key(|r| r.timestamp_ns);
    Ok(TrafficTrace {
        records,
        class_label: trace.class_label.clone(),
        duration_ns: trace.duration_ns,
    })
}

/// Built-in desk-scale catalog. The four classes differ in link utilization,
/// frame size, and burst texture so short IQ windows carry learnable
/// structure: sparse periodic pings, steady medium streaming, near-saturated
/// bulk transfer, and sparse chat bursts.
pub fn builtin_profiles() -> Vec<ClassProfile> {
    vec![
        ClassProfile {
            name: "ping_like".to_string(),
            packet_sizes: SizeDistribution::Fixed { bytes: 64 },
            arrivals: ArrivalProcess::Periodic { interval_s: 2.0e-3 },
            duty_cycle: 1.0,
        },
        ClassProfile {
            name: "stream_like".to_string(),
            packet_sizes: SizeDistribution::Fixed { bytes: 96 },
            arrivals: ArrivalProcess::Periodic { interval_s: 1.0e-3 },
            duty_cycle: 1.0,
        },
        ClassProfile {
            name: "bulk_like".to_string(),
            packet_sizes: SizeDistribution::Fixed { bytes: 184 },
            arrivals: ArrivalProcess::Periodic { interval_s: 1.6e-3 },
            duty_cycle: 1.0,
        },
        ClassProfile {
            name: "chat_like".to_string(),
            packet_sizes: SizeDistribution::Bimodal { small: 32, large: 128, large_prob: 0.3 },
            arrivals: ArrivalProcess::OnOffBurst {
                burst_s: 6.0e-3,
                idle_s: 24.0e-3,
                intra_interval_s: 1.5e-3,
            },
            duty_cycle: 0.2,
        },
    ]
}

/// Low-rate background source mixed into synthetic traces (name lookups and
/// similar chatter in the original captures).
pub fn background_profile() -> ClassProfile {
    ClassProfile {
        name: "background".to_string(),
        packet_sizes: SizeDistribution::UniformRange { min: 24, max: 48 },
        arrivals: ArrivalProcess::Exponential { mean_s: 20.0e-3 },
        duty_cycle: 1.0,
    }
}
