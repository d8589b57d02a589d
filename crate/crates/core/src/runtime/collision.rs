//! Sphere overlap detection.

use std::collections::BTreeSet;

use crate::scene::Vec3;

/// A collidable sphere.
#[derive(Debug, Clone, PartialEq)]
pub struct Body<'a> {
    pub id: &'a str,
    pub center: Vec3,
    pub radius: f64,
}

/// Unordered pair, stored with the lexicographically smaller id first.
pub type Contact = (String, String);

pub fn contact(a: &str, b: &str) -> Contact {
    if a <= b {
        (a.to_string(), b.to_string())
    } else {
        (b.to_string(), a.to_string())
    }
}

/// Strict overlap: touching spheres do not collide.
pub fn overlaps(a: &Body, b: &Body) -> bool {
    let dx = a.center[0] - b.center[0];
    let dy = a.center[1] - b.center[1];
    let dz = a.center[2] - b.center[2];
    let r = a.radius + b.radius;
    dx * dx + dy * dy + dz * dz < r * r
}

/// All overlapping pairs, found by sweep-and-prune along x.
pub fn overlapping_pairs(bodies: &[Body]) -> BTreeSet<Contact> {
    let mut order: Vec<usize> = (0..bodies.len()).collect();
    order.sort_by(|&i, &j| {
        let a = bodies[i].center[0] - bodies[i].radius;
        let b = bodies[j].center[0] - bodies[j].radius;
        a.total_cmp(&b).then(i.cmp(&j))
    });
    let mut out = BTreeSet::new();
    let mut active: Vec<usize> = Vec::new();
    for &i in &order {
        let lo = bodies[i].center[0] - bodies[i].radius;
        // Interval ends at or before `lo` cannot overlap anything later.
        active.retain(|&j| bodies[j].center[0] + bodies[j].radius > lo);
        for &j in &active {
            if overlaps(&bodies[i], &bodies[j]) {
                out.insert(contact(bodies[i].id, bodies[j].id));
            }
        }
        active.push(i);
    }
    out
}
