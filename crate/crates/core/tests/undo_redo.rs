use atomxr_core::fuzz::{random_command, random_scene};
use atomxr_core::scene::{apply_command, redo, undo, Journal, SceneError, SceneSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sequence(seed: u64) -> (SceneSpec, SceneSpec, Journal, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let initial = if rng.random_bool(0.5) { random_scene(&mut rng, 6) } else { SceneSpec::new() };
    let mut spec = initial.clone();
    let mut journal = Journal::new();
    let mut applied = 0;
    for _ in 0..rng.random_range(0..40) {
        let cmd = random_command(&mut rng, &spec);
        let before = spec.to_canonical_json();
        match apply_command(&mut spec, &cmd, &mut journal) {
            Ok(_) => applied += 1,
            // a rejected command leaves the document untouched
            Err(_) => assert_eq!(spec.to_canonical_json(), before, "seed {seed}: {cmd:?}"),
        }
    }
    (initial, spec, journal, applied)
}

#[test]
fn undo_all_restores_initial_bytes() {
    let mut total = 0;
    for seed in 0..1000 {
        let (initial, mut spec, mut journal, applied) = sequence(seed);
        total += applied;
        assert_eq!(journal.undo_depth(), applied);
        for _ in 0..applied {
            undo(&mut spec, &mut journal).unwrap();
        }
        assert!(matches!(undo(&mut spec, &mut journal), Err(SceneError::EmptyJournal)));
        assert_eq!(spec.to_canonical_json(), initial.to_canonical_json(), "seed {seed}");
    }
    assert!(total > 10_000, "{total}");
}

#[test]
fn redo_all_restores_final_bytes() {
    for seed in 0..300 {
        let (_, mut spec, mut journal, applied) = sequence(seed);
        let fin = spec.to_canonical_json();
        for _ in 0..applied {
            undo(&mut spec, &mut journal).unwrap();
        }
        for _ in 0..applied {
            redo(&mut spec, &mut journal).unwrap();
        }
        assert!(matches!(redo(&mut spec, &mut journal), Err(SceneError::EmptyJournal)));
        assert_eq!(spec.to_canonical_json(), fin, "seed {seed}");
    }
}

#[test]
fn canonical_json_reloads_identically() {
    for seed in 0..200 {
        let (_, spec, _, _) = sequence(seed);
        let text = spec.to_canonical_json();
        assert_eq!(SceneSpec::from_json(&text).unwrap().to_canonical_json(), text, "seed {seed}");
    }
}
