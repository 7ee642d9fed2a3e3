//! Straight-line brute-force oracles. They only read `shape()` and `cells()`
//! and decode flat offsets themselves, so they share no code path with the
//! solvers they check.

#![allow(dead_code)]

use ecosite::PayoffTensor;
use rand::Rng;

/// Mixed-radix decode of a flat cell offset, last axis fastest.
pub fn decode(shape: &[usize], mut offset: usize) -> Vec<usize> {
    let mut idx = vec![0; shape.len()];
    for axis in (0..shape.len()).rev() {
        idx[axis] = offset % shape[axis];
        offset /= shape[axis];
    }
    idx
}

pub fn encode(shape: &[usize], idx: &[usize]) -> usize {
    let mut offset = 0;
    for axis in 0..shape.len() {
        offset = offset * shape[axis] + idx[axis];
    }
    offset
}

/// Flat offsets of all pure equilibria: no single player gains more than
/// `tol` by switching strategy.
pub fn nash_oracle(t: &PayoffTensor, tol: f64) -> Vec<usize> {
    let shape = t.shape();
    let cells = t.cells();
    let mut found = Vec::new();
    for offset in 0..cells.len() {
        let idx = decode(shape, offset);
        let mut stable = true;
        'players: for p in 0..shape.len() {
            for alt in 0..shape[p] {
                let mut dev = idx.clone();
                dev[p] = alt;
                if cells[encode(shape, &dev)][p] > cells[offset][p] + tol {
                    stable = false;
                    break 'players;
                }
            }
        }
        if stable {
            found.push(offset);
        }
    }
    found
}

pub struct CompromiseOracle {
    pub ideal: Vec<f64>,
    pub residuals: Vec<f64>,
    pub min: f64,
    pub minimizers: Vec<usize>,
}

pub fn compromise_oracle(t: &PayoffTensor, tol: f64) -> CompromiseOracle {
    let n = t.player_count();
    let cells = t.cells();
    let mut ideal = vec![f64::NEG_INFINITY; n];
    for cell in cells {
        for p in 0..n {
            if cell[p] > ideal[p] {
                ideal[p] = cell[p];
            }
        }
    }
    let mut residuals = Vec::with_capacity(cells.len());
    for cell in cells {
        let mut worst = f64::NEG_INFINITY;
        for p in 0..n {
            let gap = ideal[p] - cell[p];
            if gap > worst {
                worst = gap;
            }
        }
        residuals.push(worst);
    }
    let mut min = f64::INFINITY;
    for &r in &residuals {
        if r < min {
            min = r;
        }
    }
    let minimizers = (0..cells.len()).filter(|&i| residuals[i] <= min + tol).collect();
    CompromiseOracle { ideal, residuals, min, minimizers }
}

/// Random dense tensor: 1..=max_players players, 1..=max_strategies
/// strategies each, payoffs uniform in [lo, hi].
pub fn random_tensor(rng: &mut impl Rng, max_players: usize, max_strategies: usize, lo: f64, hi: f64) -> PayoffTensor {
    let n = rng.gen_range(1..=max_players);
    let shape: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_strategies)).collect();
    let cells: usize = shape.iter().product();
    let payoffs = (0..cells).map(|_| (0..n).map(|_| rng.gen_range(lo..=hi)).collect()).collect();
    PayoffTensor::from_payoffs(shape, payoffs).unwrap()
}

/// Relative error of an analytic 2-vector against a numeric one.
pub fn relative_error(analytic: [f64; 2], numeric: [f64; 2]) -> f64 {
    let diff = (analytic[0] - numeric[0]).hypot(analytic[1] - numeric[1]);
    let scale = analytic[0].hypot(analytic[1]).max(numeric[0].hypot(numeric[1]));
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}
