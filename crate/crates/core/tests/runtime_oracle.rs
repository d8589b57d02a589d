mod common;

use std::collections::BTreeSet;

use atomxr_core::fuzz::random_scene;
use atomxr_core::runtime::{run_scenario, start_play, trace_jsonl, RuntimeConfig, RuntimeState};
use atomxr_core::scene::PLAYER_ID;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Every pair of visible spheres whose centers are closer than the sum of
/// their radii, checked pair by pair.
fn naive_contacts(rt: &RuntimeState, config: &RuntimeConfig) -> BTreeSet<(String, String)> {
    let mut bodies = vec![(PLAYER_ID.to_string(), rt.player_position(), config.player_radius)];
    for o in rt.objects().filter(|o| o.visible) {
        let largest = o.size[0].max(o.size[1]).max(o.size[2]);
        let unit = config.unit_radii.get(&o.asset_type).copied().unwrap_or(1.0);
        bodies.push((o.id.clone(), o.position, 0.5 * largest * unit));
    }
    let mut out = BTreeSet::new();
    for i in 0..bodies.len() {
        for j in i + 1..bodies.len() {
            let (a, pa, ra) = &bodies[i];
            let (b, pb, rb) = &bodies[j];
            let d2: f64 = (0..3).map(|k| (pa[k] - pb[k]).powi(2)).sum();
            if d2 < (ra + rb).powi(2) {
                out.insert(if a <= b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) });
            }
        }
    }
    out
}

#[test]
fn contacts_match_pairwise_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut ticks_checked = 0;
    let mut nonempty = 0;
    for scene in 0..200 {
        let spec = random_scene(&mut rng, 20);
        let mut config = RuntimeConfig { seed: scene, ..RuntimeConfig::default() };
        config.unit_radii.insert("cherry".into(), 0.8);
        config.player_radius = rng.random_range(0.1..0.6);
        let mut rt = start_play(&spec, &config).unwrap();
        let ticks = rng.random_range(1..=500);
        for t in 0..ticks {
            let step = [rng.random_range(-0.1..0.1), 0.0, rng.random_range(-0.1..0.1)];
            rt.tick(step);
            let oracle = naive_contacts(&rt, &config);
            assert_eq!(rt.contacts(), &oracle, "scene {scene} tick {t}");
            nonempty += usize::from(!oracle.is_empty());
            ticks_checked += 1;
        }
    }
    assert!(nonempty * 10 > ticks_checked, "oracle rarely exercised: {nonempty}/{ticks_checked}");
}

#[test]
fn chase_replays_are_byte_identical() {
    let s = common::chase_session();
    let runs: Vec<String> = (0..3)
        .map(|_| trace_jsonl(run_scenario(s.spec(), s.config(), &common::chase_inputs(), 3000).unwrap().trace()))
        .collect();
    assert!(!runs[0].is_empty());
    assert!(runs.iter().all(|r| r == &runs[0]));
}

#[test]
fn shooter_replays_are_byte_identical() {
    let (spec, config, inputs) = common::shooter();
    let runs: Vec<String> =
        (0..3).map(|_| trace_jsonl(run_scenario(&spec, &config, &inputs, 2400).unwrap().trace())).collect();
    assert!(runs[0].contains("objectRelocated"));
    assert!(runs.iter().all(|r| r == &runs[0]));
}
