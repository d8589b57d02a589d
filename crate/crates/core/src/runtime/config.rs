use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::scene::Vec3;

/// Axis-aligned box that `RandomPosition()` samples uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpawnBox {
    pub min: Vec3,
    pub max: Vec3,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct RuntimeConfig {
    /// Seconds per tick.
    pub dt: f64,
    /// Named speeds in units per second. Numeric strings bypass the map.
    pub speed_map: BTreeMap<String, f64>,
    pub player_radius: f64,
    pub player_start: Vec3,
    /// Per-asset-type radius of a unit-size object; missing types use 1.
    pub unit_radii: BTreeMap<String, f64>,
    pub seed: u64,
    pub spawn_box: SpawnBox,
    /// Upper bound on ticks per scenario run.
    pub max_ticks: u64,
}

impl Default for RuntimeConfig {
    fn default() -> Self {
        RuntimeConfig {
            dt: 1.0 / 60.0,
            speed_map: BTreeMap::from([("slow".to_string(), 0.5), ("fast".to_string(), 2.0)]),
            player_radius: 0.25,
            player_start: [0.0, 0.0, 0.0],
            unit_radii: BTreeMap::new(),
            seed: 0,
            spawn_box: SpawnBox { min: [-5.0, 0.0, 5.0], max: [5.0, 3.0, 15.0] },
            max_ticks: 1_000_000,
        }
    }
}

impl RuntimeConfig {
    pub fn check(&self) -> Result<(), String> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(format!("dt must be > 0, got {}", self.dt));
        }
        if let Some((k, v)) = self.speed_map.iter().find(|(_, v)| !(v.is_finite() && **v > 0.0)) {
            return Err(format!("speed `{k}` must be > 0, got {v}"));
        }
        if !(self.player_radius.is_finite() && self.player_radius >= 0.0) {
            return Err("player radius must be >= 0".into());
        }
        let b = &self.spawn_box;
        if (0..3).any(|i| !(b.min[i].is_finite() && b.max[i].is_finite() && b.min[i] <= b.max[i])) {
            return Err("spawn box min must not exceed max".into());
        }
        Ok(())
    }

    /// Units per second for a speed argument: a named speed, or a string
    /// holding a positive number.
    pub fn speed(&self, name: &str) -> Option<f64> {
        self.speed_map
            .get(name)
            .copied()
            .or_else(|| name.trim().parse::<f64>().ok().filter(|v| v.is_finite() && *v >= 0.0))
    }

    pub fn unit_radius(&self, asset_type: &str) -> f64 {
        self.unit_radii.get(asset_type).copied().unwrap_or(1.0)
    }
}
