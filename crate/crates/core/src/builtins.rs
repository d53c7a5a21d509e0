//! Named example fans.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Names accepted by [`builtin`], with `f:a` standing for the Hirzebruch
/// family.
pub const BUILTIN_NAMES: [&str; 6] = ["p1xp1", "example2", "p2", "f1", "p112", "f:a"];

/// Rays of the Hirzebruch surface `F_a`.
pub fn hirzebruch(a: i64) -> Vec<[i64; 2]> {
    vec![[1, 0], [0, 1], [-1, -a], [0, -1]]
}

/// Looks up a built-in fan by name, returning a display name and its rays.
pub fn builtin(name: &str) -> Option<(String, Vec<[i64; 2]>)> {
    let rays = match name {
        "p1xp1" => vec![[1, 0], [0, 1], [-1, 0], [0, -1]],
        "example2" => vec![[1, 0], [0, 1], [-1, -2], [-2, -1]],
        "p2" => vec![[1, 0], [0, 1], [-1, -1]],
        "f1" => hirzebruch(1),
        "p112" => vec![[1, 0], [0, 1], [-1, -2]],
        _ => {
            let a: i64 = name.strip_prefix("f:")?.trim().parse().ok()?;
            return Some((format!("f:{a}"), hirzebruch(a)));
        }
    };
    Some((String::from(name), rays))
}
