//! Argument value parsers.

use minkgeo::vec3::Ambient;

fn list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(|x| x.trim().parse::<f64>().map_err(|_| format!("'{x}' is not a number")))
        .collect()
}


pub fn pair(s: &str) -> Result<(f64, f64), String> {
    match list(s)?.as_slice() {
        [a, b] => Ok((*a, *b)),
        _ => Err(format!("expected two comma-separated numbers, got '{s}'")),
    }
}

pub fn triple(s: &str) -> Result<[f64; 3], String> {
    match list(s)?.as_slice() {
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(format!("expected three comma-separated numbers, got '{s}'")),
    }
}

/// `n,nu`
pub fn signature(s: &str) -> Result<(usize, usize), String> {
    let parts: Vec<_> = s.split(',').map(|x| x.trim().parse::<usize>()).collect();
    match parts.as_slice() {
        [Ok(n), Ok(nu)] => Ok((*n, *nu)),
        _ => Err(format!("expected 'n,nu', got '{s}'")),
    }
}

/// `NUxNV`, both at least 2.
pub fn grid(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or_else(|| format!("expected 'NUxNV', got '{s}'"))?;
    let parse = |x: &str| x.trim().parse::<usize>().map_err(|_| format!("'{x}' is not a grid size"));
    let (nu, nv) = (parse(a)?, parse(b)?);
    if nu < 2 || nv < 2 {
        return Err("grid dimensions must be at least 2".into());
    }
    Ok((nu, nv))
}

pub fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        _ => Err(format!("expected a positive number, got '{s}'")),
    }
}

pub fn ambient(s: &str) -> Result<Ambient, String> {
    match s.to_ascii_lowercase().as_str() {
        "e3" | "r3" | "euclidean" => Ok(Ambient::Euclidean3),
        "l3" | "lorentz" | "minkowski" => Ok(Ambient::Lorentz3),
        "r32" | "index2" => Ok(Ambient::Index2_3),
        _ => Err(format!("unknown ambient '{s}' (expected e3, l3 or r32)")),
    }
}
