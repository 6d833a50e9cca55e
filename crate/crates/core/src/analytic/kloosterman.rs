//! Kloosterman sums K(m, n, c) = Σ_{v (c)×} e((m v̄ + n v)/c) and a batched
//! driver for the series Σ_c K(m, n, c)·w(c) that the mock-coefficient and
//! Poincaré layers are built from.
//!
//! The sums are real by the v ↔ -v symmetry, so each modulus is evaluated
//! as an integer-weighted combination of cos(2πt/c) over folded residues
//! t <= c/2, with the cosine table built once per modulus by the Chebyshev
//! recurrence and shared across all (m, n) pairs in the batch.

use rayon::prelude::*;

use super::real::{Accumulator, Real};

/// Modular inverse of v modulo c (v coprime to c, c >= 2).
fn mod_inv(v: u64, c: u64) -> u64 {
    let (mut old_r, mut r) = (v as i128, c as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse of non-unit");
    old_s.rem_euclid(c as i128) as u64
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Folded residue counts of (m v̄ + n v) mod c over primitive v, reusing the
/// caller's buffers. After the call, `counts[t]` for t in `touched` holds the
/// number of v with the phase congruent to ±t, 0 <= t <= c/2.
fn residue_counts(
    m: i64,
    n: i64,
    c: u64,
    inverses: &[(u64, u64)],
    counts: &mut [u32],
    touched: &mut Vec<u32>,
) {
    let ci = c as i128;
    for &(v, vbar) in inverses {
        let phase = (m as i128 * vbar as i128 + n as i128 * v as i128).rem_euclid(ci) as u64;
        let folded = phase.min(c - phase) as usize;
        if counts[folded] == 0 {
            touched.push(folded as u32);
        }
        counts[folded] += 1;
    }
}

/// cos(2πt/c) for t = 0..=c/2 by the two-term recurrence, at `bits`.
fn cosine_table(c: u64, bits: usize) -> Vec<Real> {
    let half = (c / 2) as usize;
    let mut table = Vec::with_capacity(half + 1);
    table.push(Real::one(bits));
    if half == 0 {
        return table;
    }
    let angle = Real::pi(bits).mul_i64(2).div_i64(c as i64);
    let c1 = angle.cos();
    table.push(c1.clone());
    let doubled = c1.mul_i64(2);
    for t in 2..=half {
        let next = doubled.mul(&table[t - 1]).sub(&table[t - 2]);
        table.push(next);
    }
    table
}

/// K(m, n, c) at the given precision. K(m, n, 1) = 1 by the empty-phase
/// convention.
pub fn kloosterman(m: i64, n: i64, c: u32, bits: usize) -> Real {
    if c == 1 {
        return Real::one(bits);
    }
    let c = c as u64;
    let inverses: Vec<(u64, u64)> = (1..c)
        .filter(|&v| gcd(v, c) == 1)
        .map(|v| (v, mod_inv(v, c)))
        .collect();
    let mut counts = vec![0u32; (c / 2 + 1) as usize];
    let mut touched = Vec::new();
    residue_counts(m, n, c, &inverses, &mut counts, &mut touched);
    let table = cosine_table(c, bits + 32);
    let mut acc = Accumulator::new(bits);
    touched.sort_unstable();
    for &t in &touched {
        let count = counts[t as usize];
        let term = if count == 1 {
            table[t as usize].clone()
        } else {
            table[t as usize].mul_i64(count as i64)
        };
        acc.add(&term);
    }
    acc.value()
}

/// One truncated series Σ_{c=1}^{c_max} K(m_i, n_i, c)·w_i(c) per job.
#[derive(Debug, Clone, Copy)]
pub struct KloostermanJob {
    pub m: i64,
    pub n: i64,
}

/// Value and heuristic tail estimate of a truncated c-series. The estimate
/// is twice the magnitude of the last decade's contribution
/// (c in (c_max/10, c_max]), as disclosed by the reporting layer.
#[derive(Debug, Clone)]
pub struct SeriesSum {
    pub value: Real,
    pub tail_estimate: Real,
    pub c_max: u32,
}

const CHUNK: u64 = 256;

/// Evaluate all jobs in one ascending pass over c, sharing per-modulus
/// inverse enumerations and cosine tables. `weight(job_index, c)` supplies
/// the smooth factor (Bessel kernels, powers of c).
///
/// Chunks of fixed size are evaluated in parallel and folded in ascending
/// order, so results do not depend on the thread count.
pub fn sum_kloosterman_series<W>(jobs: &[KloostermanJob], c_max: u32, bits: usize, weight: W) -> Vec<SeriesSum>
where
    W: Fn(usize, u32) -> Real + Sync,
{
    let decade_start = (c_max / 10).max(1) as u64;
    let chunk_count = (c_max as u64).div_ceil(CHUNK);
    let partials: Vec<(Vec<Real>, Vec<Real>)> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK + 1;
            let hi = ((chunk + 1) * CHUNK).min(c_max as u64);
            let work_bits = bits + 64;
            let mut sums: Vec<Accumulator> = jobs.iter().map(|_| Accumulator::new(work_bits)).collect();
            let mut decade: Vec<Accumulator> = jobs.iter().map(|_| Accumulator::new(work_bits)).collect();
            let mut counts: Vec<u32> = Vec::new();
            let mut touched: Vec<u32> = Vec::new();
            for c in lo..=hi {
                let in_decade = c > decade_start;
                if c == 1 {
                    for (i, _) in jobs.iter().enumerate() {
                        let term = weight(i, 1);
                        sums[i].add(&term);
                        if in_decade {
                            decade[i].add(&term);
                        }
                    }
                    continue;
                }
                let inverses: Vec<(u64, u64)> = (1..c)
                    .filter(|&v| gcd(v, c) == 1)
                    .map(|v| (v, mod_inv(v, c)))
                    .collect();
                let table = cosine_table(c, work_bits);
                counts.clear();
                counts.resize((c / 2 + 1) as usize, 0);
                for (i, job) in jobs.iter().enumerate() {
                    touched.clear();
                    residue_counts(job.m, job.n, c, &inverses, &mut counts, &mut touched);
                    touched.sort_unstable();
                    let mut k = Accumulator::new(work_bits);
                    for &t in &touched {
                        let count = counts[t as usize];
                        let term = if count == 1 {
                            table[t as usize].clone()
                        } else {
                            table[t as usize].mul_i64(count as i64)
                        };
                        k.add(&term);
                        counts[t as usize] = 0;
                    }
                    let k = k.value();
                    if !k.is_zero() {
                        let term = k.mul(&weight(i, c as u32));
                        sums[i].add(&term);
                        if in_decade {
                            decade[i].add(&term);
                        }
                    }
                }
            }
            (
                sums.into_iter().map(|a| a.value()).collect(),
                decade.into_iter().map(|a| a.value()).collect(),
            )
        })
        .collect();

    let mut totals: Vec<Accumulator> = jobs.iter().map(|_| Accumulator::new(bits)).collect();
    let mut decades: Vec<Accumulator> = jobs.iter().map(|_| Accumulator::new(bits)).collect();
    for (chunk_sums, chunk_decades) in &partials {
        for i in 0..jobs.len() {
            totals[i].add(&chunk_sums[i]);
            decades[i].add(&chunk_decades[i]);
        }
    }
    totals
        .into_iter()
        .zip(decades)
        .map(|(t, d)| SeriesSum {
            value: t.value(),
            tail_estimate: d.value().abs().mul_i64(2),
            c_max,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const BITS: usize = 192;

    #[test]
    fn small_moduli() {
        // K(1,1,1) = 1; K(1,1,2) = cos(2π·2/2·1/2)·... = e(2/2) = 1;
        // K(1,1,3) = e(2/3) + e(4/3) = 2cos(2π/3) = -1.
        assert!((kloosterman(1, 1, 1, BITS).to_f64() - 1.0).abs() < 1e-30);
        assert!((kloosterman(1, 1, 2, BITS).to_f64() - 1.0).abs() < 1e-30);
        assert!((kloosterman(1, 1, 3, BITS).to_f64() + 1.0).abs() < 1e-30);
    }

    #[test]
    fn known_value_c5() {
        // K(1,1,5) = 2cos(4π/5) + 2cos(2π·2·.. enumerated directly:
        // phases (v̄+v) mod 5 over v=1..4: 2, 0, 0, 3 -> 2 + 2cos(4π/5).
        let got = kloosterman(1, 1, 5, BITS).to_f64();
        let expected = 2.0 + 2.0 * (4.0 * std::f64::consts::PI / 5.0).cos();
        assert!((got - expected).abs() < 1e-12);
    }

    #[test]
    fn symmetry_in_m_and_n() {
        for c in 2..=50u32 {
            let a = kloosterman(2, 7, c, BITS);
            let b = kloosterman(7, 2, c, BITS);
            assert!(a.sub(&b).abs().to_f64() < 1e-40, "c={c}");
        }
    }

    #[test]
    fn negated_arguments_agree() {
        for c in 2..=30u32 {
            let a = kloosterman(-1, 3, c, BITS);
            let b = kloosterman(1, -3, c, BITS);
            assert!(a.sub(&b).abs().to_f64() < 1e-40, "c={c}");
        }
    }

    #[test]
    fn ramanujan_sum_at_n_zero() {
        // K(m, 0, c) is the Ramanujan sum; for m=1 it is the Möbius function.
        let mu = [0i64, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1];
        for c in 1..=10u32 {
            let got = kloosterman(1, 0, c, BITS).to_f64();
            assert!((got - mu[c as usize] as f64).abs() < 1e-12, "c={c}");
        }
    }

    #[test]
    fn batched_driver_matches_single_sums() {
        let jobs = [KloostermanJob { m: -1, n: 1 }, KloostermanJob { m: 1, n: 2 }];
        let sums = sum_kloosterman_series(&jobs, 300, BITS, |_, c| {
            Real::from_u64(1, BITS + 64).div_i64(c as i64 * c as i64)
        });
        for (i, job) in jobs.iter().enumerate() {
            let mut acc = Accumulator::new(BITS);
            for c in 1..=300u32 {
                let k = kloosterman(job.m, job.n, c, BITS + 64);
                acc.add(&k.div_i64(c as i64 * c as i64));
            }
            let direct = acc.value();
            let diff = sums[i].value.sub(&direct).abs().to_f64();
            assert!(diff < 1e-45, "job {i}: diff {diff}");
        }
    }
}
