//! Shared helpers for integration tests: fixture loading, a scripted mock
//! HTTP server, and a seeded random log generator.

#![allow(dead_code)]

pub mod dot_check;
pub mod mock_server;
pub mod oracles;

use std::path::PathBuf;

use pmllm::eventlog::DEFAULT_TIMESTAMP_FORMAT;
use pmllm::{import_csv, import_ocel_json, import_pnml, EventLog, EventLogBuilder, Ocel, RoleMap};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

pub fn log1() -> EventLog {
    import_csv(fixture("log1.csv"), &RoleMap::default(), DEFAULT_TIMESTAMP_FORMAT).unwrap()
}

pub fn ocel1() -> Ocel {
    import_ocel_json(fixture("ocel1.json")).unwrap()
}

pub fn pn1() -> pmllm::PetriNet {
    import_pnml(fixture("pn1.pnml")).unwrap()
}

/// 1x1 transparent PNG, enough for image-part wiring.
pub const TINY_PNG: &[u8] = &[
    0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x48, 0x44,
    0x52, 0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00, 0x00, 0x1F,
    0x15, 0xC4, 0x89, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9C, 0x63, 0x00,
    0x01, 0x00, 0x00, 0x05, 0x00, 0x01, 0x0D, 0x0A, 0x2D, 0xB4, 0x00, 0x00, 0x00, 0x00, 0x49,
    0x45, 0x4E, 0x44, 0xAE, 0x42, 0x60, 0x82,
];

/// Seeded random log: up to `max_cases` cases, 1..=`max_events` events per
/// case over an alphabet of `alphabet_size` single-letter activities.
pub fn random_log(
    rng: &mut ChaCha8Rng,
    max_cases: usize,
    max_events: usize,
    alphabet_size: usize,
) -> EventLog {
    const LETTERS: [&str; 8] = ["A", "B", "C", "D", "E", "F", "G", "H"];
    let cases = rng.random_range(1..=max_cases);
    let mut builder = EventLogBuilder::new();
    for c in 0..cases {
        let case_id = format!("case{c}");
        let events = rng.random_range(1..=max_events);
        let mut ts = rng.random_range(0..1_000_000i64) * 1_000_000;
        for _ in 0..events {
            let act = LETTERS[rng.random_range(0..alphabet_size)];
            builder.event(&case_id, act, ts);
            ts += rng.random_range(0..=3_600i64) * 1_000_000;
        }
    }
    builder.build().expect("at least one case")
}

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
