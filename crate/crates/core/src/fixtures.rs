//! Named example spaces (loops implicit).

use crate::error::{Error, Result};
use crate::space::ConvergenceSpace;

pub const NAMES: [&str; 7] = ["sierpinski", "line3", "triangle", "square-acd", "square-symmetric", "kite", "vee"];

fn build(labels: &[&str], arrows: &[(&str, &str)]) -> ConvergenceSpace {
    ConvergenceSpace::new(labels.iter().copied(), arrows.iter().copied()).expect("fixture is well formed")
}

/// `0 -> 1`
pub fn sierpinski() -> ConvergenceSpace {
    build(&["0", "1"], &[("0", "1")])
}

/// `a -> b -> c`
pub fn line3() -> ConvergenceSpace {
    build(&["a", "b", "c"], &[("a", "b"), ("b", "c")])
}

/// `a -> b -> c -> a`
pub fn triangle() -> ConvergenceSpace {
    build(&["a", "b", "c"], &[("a", "b"), ("b", "c"), ("c", "a")])
}

/// `a -> b, a -> d, b -> c, d -> c`
pub fn square_acd() -> ConvergenceSpace {
    build(&["a", "b", "c", "d"], &[("a", "b"), ("a", "d"), ("b", "c"), ("d", "c")])
}

/// The reciprocal modification of [`square_acd`].
pub fn square_symmetric() -> ConvergenceSpace {
    square_acd().r_modification()
}

/// `a -> b, c -> b, d -> c`
pub fn kite() -> ConvergenceSpace {
    build(&["a", "b", "c", "d"], &[("a", "b"), ("c", "b"), ("d", "c")])
}

/// `a -> b <- c`
pub fn vee() -> ConvergenceSpace {
    build(&["a", "b", "c"], &[("a", "b"), ("c", "b")])
}

pub fn by_name(name: &str) -> Result<ConvergenceSpace> {
    Ok(match name {
        "sierpinski" => sierpinski(),
        "line3" => line3(),
        "triangle" => triangle(),
        "square-acd" => square_acd(),
        "square-symmetric" => square_symmetric(),
        "kite" => kite(),
        "vee" => vee(),
        _ => return Err(Error::UnknownFixture(name.to_string())),
    })
}

pub fn all() -> Vec<(&'static str, ConvergenceSpace)> {
    NAMES.iter().map(|&n| (n, by_name(n).unwrap())).collect()
}
