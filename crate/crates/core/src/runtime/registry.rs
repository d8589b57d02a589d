//! The closed set of callable built-in functions.

use std::collections::HashMap;

/// What a built-in expects in a given argument position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamKind {
    ObjectId,
    Speed,
    Vector,
    Sound,
    AssetType,
    Index,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReturnKind {
    Nothing,
    Number,
    Vector,
    ObjectId,
}

#[derive(Debug, Clone)]
pub struct Builtin {
    pub name: &'static str,
    pub params: &'static [ParamKind],
    pub returns: ReturnKind,
    pub aliases: &'static [&'static str],
    pub summary: &'static str,
}

impl Builtin {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

#[derive(Debug, Clone)]
pub struct BuiltinRegistry {
    entries: Vec<Builtin>,
    by_name: HashMap<&'static str, usize>,
}

use ParamKind::*;

const STANDARD: &[Builtin] = &[
    Builtin {
        name: "Move",
        params: &[ObjectId, Speed, Vector],
        returns: ReturnKind::Nothing,
        aliases: &[],
        summary: "displace an object by speed*dt along the normalized direction",
    },
    Builtin {
        name: "ChangeColor",
        params: &[ObjectId, Vector],
        returns: ReturnKind::Nothing,
        aliases: &[],
        summary: "set an object's RGB color",
    },
    Builtin {
        name: "GetPosition",
        params: &[ObjectId],
        returns: ReturnKind::Vector,
        aliases: &[],
        summary: "current position of an object or the Player",
    },
    Builtin {
        name: "PlaySound",
        params: &[Sound],
        returns: ReturnKind::Nothing,
        aliases: &["Play"],
        summary: "play a named sound",
    },
    Builtin {
        name: "Disappear",
        params: &[ObjectId],
        returns: ReturnKind::Nothing,
        aliases: &[],
        summary: "hide an object and remove it from collision and press targeting",
    },
    Builtin {
        name: "Appear",
        params: &[ObjectId],
        returns: ReturnKind::Nothing,
        aliases: &[],
        summary: "show a hidden object",
    },
    Builtin {
        name: "TimeSinceStart",
        params: &[],
        returns: ReturnKind::Number,
        aliases: &["timeSinceStart"],
        summary: "seconds elapsed in play mode",
    },
    Builtin {
        name: "CreateObject",
        params: &[AssetType],
        returns: ReturnKind::ObjectId,
        aliases: &[],
        summary: "spawn an object at the default pose, returning its id",
    },
    Builtin {
        name: "DeleteObject",
        params: &[ObjectId],
        returns: ReturnKind::Nothing,
        aliases: &[],
        summary: "remove an object for the rest of the play session",
    },
    Builtin {
        name: "SetPosition",
        params: &[ObjectId, Vector],
        returns: ReturnKind::Nothing,
        aliases: &[],
        summary: "teleport an object to a position",
    },
    Builtin {
        name: "Rotate",
        params: &[ObjectId, Vector],
        returns: ReturnKind::Nothing,
        aliases: &[],
        summary: "add Euler degrees to an object's orientation",
    },
    Builtin {
        name: "RandomPosition",
        params: &[],
        returns: ReturnKind::Vector,
        aliases: &[],
        summary: "uniform random point in the configured spawn box",
    },
    Builtin {
        name: "CollisionObject",
        params: &[Index],
        returns: ReturnKind::ObjectId,
        aliases: &[],
        summary: "inside onCollision, the id that matched type argument 0 or 1",
    },
];

impl BuiltinRegistry {
    pub fn standard() -> Self {
        Self::from_entries(STANDARD.to_vec())
    }

    /// Panics if two entries share a name or alias.
    pub fn from_entries(entries: Vec<Builtin>) -> Self {
        let mut by_name = HashMap::new();
        for (i, b) in entries.iter().enumerate() {
            for name in std::iter::once(&b.name).chain(b.aliases) {
                assert!(by_name.insert(*name, i).is_none(), "duplicate builtin name {name}");
            }
        }
        BuiltinRegistry { entries, by_name }
    }

    pub fn lookup(&self, name: &str) -> Option<&Builtin> {
        self.by_name.get(name).map(|&i| &self.entries[i])
    }

    pub fn contains(&self, name: &str) -> bool {
        self.by_name.contains_key(name)
    }

    pub fn entries(&self) -> &[Builtin] {
        &self.entries
    }
}

impl Default for BuiltinRegistry {
    fn default() -> Self {
        Self::standard()
    }
}
