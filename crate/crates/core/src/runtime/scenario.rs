use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::config::RuntimeConfig;
use super::state::{start_play, PlayError, RuntimeState};
use crate::scene::{SceneSpec, Vec3};

/// One line of an input script: a displacement of the player for a tick,
/// optionally with a button press.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PlayerInput {
    /// Tick the input applies to. Inputs without one apply at their index in
    /// the list.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tick: Option<u64>,
    pub dx: f64,
    pub dy: f64,
    pub dz: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub press: Option<String>,
}

impl PlayerInput {
    pub fn step(tick: u64, d: Vec3) -> Self {
        PlayerInput { tick: Some(tick), dx: d[0], dy: d[1], dz: d[2], press: None }
    }

    pub fn press(tick: u64, id: impl Into<String>) -> Self {
        PlayerInput { tick: Some(tick), press: Some(id.into()), ..Default::default() }
    }

    pub fn displacement(&self) -> Vec3 {
        [self.dx, self.dy, self.dz]
    }

    pub fn check(&self) -> Result<(), String> {
        if self.displacement().iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err("displacement must be finite".into())
        }
    }
}

/// Parses JSON Lines input; blank lines are skipped.
pub fn parse_inputs(text: &str) -> Result<Vec<PlayerInput>, String> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| {
            let input: PlayerInput = serde_json::from_str(l).map_err(|e| format!("line {}: {e}", i + 1))?;
            input.check().map_err(|e| format!("line {}: {e}", i + 1))?;
            Ok(input)
        })
        .collect()
}

/// Plays `spec` for `until_tick` ticks, feeding the inputs scheduled for each
/// tick. Inputs at or beyond `until_tick` are ignored.
pub fn run_scenario(
    spec: &SceneSpec,
    config: &RuntimeConfig,
    inputs: &[PlayerInput],
    until_tick: u64,
) -> Result<RuntimeState, PlayError> {
    if until_tick > config.max_ticks {
        return Err(PlayError::TickLimit { requested: until_tick, limit: config.max_ticks });
    }
    let mut schedule: BTreeMap<u64, (Vec3, Vec<&str>)> = BTreeMap::new();
    for (i, input) in inputs.iter().enumerate() {
        let t = input.tick.unwrap_or(i as u64);
        let slot = schedule.entry(t).or_insert(([0.0; 3], Vec::new()));
        for (acc, d) in slot.0.iter_mut().zip(input.displacement()) {
            *acc += d;
        }
        if let Some(id) = &input.press {
            slot.1.push(id);
        }
    }
    let mut state = start_play(spec, config)?;
    for t in 0..until_tick {
        let (d, presses) = schedule.remove(&t).unwrap_or(([0.0; 3], Vec::new()));
        for id in presses {
            state.press_button(id)?;
        }
        state.tick(d);
    }
    Ok(state)
}
