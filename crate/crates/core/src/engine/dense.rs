use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use std::time::Instant;

use crate::diagram::BraidWord;
use crate::laurent::LaurentVZ;

use super::perm::{factorial, Perm};
use super::{Budget, EngineError};

/// Multiplication and restriction tables for `S_m` indexed by rank.
struct Tables {
    m: usize,
    /// `(rank of w·s_i, length went up)` at `r * (m - 1) + i`.
    gen: Vec<(u32, bool)>,
    /// Ranks grouped by the position of the largest value; the second entry
    /// is the rank in `S_{m-1}` once that value is deleted.
    by_top: Vec<Vec<(u32, u32)>>,
}

fn tables(m: usize) -> Arc<Tables> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Tables>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(t) = cache.lock().expect("table cache").get(&m) {
        return t.clone();
    }
    let count = factorial(m);
    let mut gen = Vec::with_capacity(count * m.saturating_sub(1));
    let mut by_top = vec![Vec::new(); m];
    for r in 0..count {
        let w = Perm::unrank(m, r);
        for i in 0..m.saturating_sub(1) {
            let (ws, up) = w.times_generator(i);
            gen.push((ws.rank() as u32, up));
        }
        if m > 0 {
            let p = w.0.iter().position(|&x| x as usize == m - 1).expect("permutation");
            let mut u = w.0.clone();
            u.remove(p);
            by_top[p].push((r as u32, Perm(u).rank() as u32));
        }
    }
    let t = Arc::new(Tables { m, gen, by_top });
    cache.lock().expect("table cache").insert(m, t.clone());
    t
}

/// Dense element of `H_m`: for each permutation rank a `vlen × zlen` block
/// of coefficients of `v^(vmin + i) z^j`.
#[derive(Clone)]
struct Level {
    vlen: usize,
    zlen: usize,
    data: Vec<i128>,
}

impl Level {
    fn zeros(basis: usize, vlen: usize, zlen: usize) -> Self {
        Self { vlen, zlen, data: vec![0; basis * vlen * zlen] }
    }

    fn block(&self) -> usize {
        self.vlen * self.zlen
    }

    /// Right multiplication by `σ_i^{±1}`, touching z-degrees up to `zdeg`.
    /// Terms pushed past the last z slot are dropped.
    fn times_generator(&mut self, t: &Tables, i: usize, inverse: bool, zdeg: usize) {
        let zdeg = zdeg.min(self.zlen - 1);
        let (vlen, zlen, block) = (self.vlen, self.zlen, self.block());
        let stride = t.m - 1;
        for r in 0..t.gen.len() / stride {
            let (r2, up) = t.gen[r * stride + i];
            if !up {
                continue;
            }
            let (lo, hi) = (r * block, r2 as usize * block);
            for vi in 0..vlen {
                let (a0, b0) = (lo + vi * zlen, hi + vi * zlen);
                // a = c_w, b = c_{ws} with ℓ(ws) = ℓ(w) + 1; downward so z^{k-1} is still old
                if inverse {
                    // c_w ← b − z a, c_ws ← a
                    for k in (0..=zdeg).rev() {
                        let a = self.data[a0 + k];
                        let za = if k > 0 { self.data[a0 + k - 1] } else { 0 };
                        let b = self.data[b0 + k];
                        self.data[a0 + k] = b - za;
                        self.data[b0 + k] = a;
                    }
                } else {
                    // c_w ← b, c_ws ← a + z b
                    for k in (0..=zdeg).rev() {
                        let a = self.data[a0 + k];
                        let b = self.data[b0 + k];
                        let zb = if k > 0 { self.data[b0 + k - 1] } else { 0 };
                        self.data[a0 + k] = b;
                        self.data[b0 + k] = a + zb;
                    }
                }
            }
        }
    }
}

/// Framed Homfly of a braid closure with dense integer arithmetic.
///
/// Each level of the trace is multiplied through by `z` so coefficients stay
/// polynomial in `z`; the total shift is undone at the end.
pub fn trace_closure_dense(b: &BraidWord) -> LaurentVZ {
    dense(b, None, Budget::default()).expect("no budget")
}

/// [`trace_closure_dense`] under a time and memory budget. Memory is the
/// size of the coefficient arrays, checked before any work starts.
pub fn trace_closure_dense_with_budget(b: &BraidWord, budget: Budget) -> Result<LaurentVZ, EngineError> {
    dense(b, None, budget)
}

/// Framed Homfly of the closures of `prefix · suffix` for every suffix,
/// computing the common prefix once. With `max_z` only terms of z-degree at
/// most `max_z` are kept, as in [`trace_closure_dense_truncated`].
pub fn trace_closures_shared(prefix: &BraidWord, suffixes: &[BraidWord], max_z: Option<i32>) -> Vec<LaurentVZ> {
    let zcap = match max_z {
        None => None,
        Some(z) if prefix.strands as i32 - 1 + z < 0 => return vec![LaurentVZ::zero(); suffixes.len()],
        Some(z) => Some((prefix.strands as i32 + z) as usize),
    };
    dense_shared(prefix, suffixes, zcap, Budget::default()).expect("no budget")
}

/// Terms of the framed Homfly of a braid closure with z-degree at most
/// `max_z`. Everything runs modulo a power of `z`, so this is much cheaper
/// than the full value; `max_z = 0` gives `P₀` for a knot.
pub fn trace_closure_dense_truncated(b: &BraidWord, max_z: i32) -> LaurentVZ {
    let cap = b.strands as i32 - 1 + max_z;
    if cap < 0 {
        return LaurentVZ::zero();
    }
    dense(b, Some(cap as usize + 1), Budget::default()).expect("no budget")
}

fn dense(b: &BraidWord, zcap: Option<usize>, budget: Budget) -> Result<LaurentVZ, EngineError> {
    let empty = BraidWord { strands: b.strands, word: Vec::new() };
    Ok(dense_shared(b, std::slice::from_ref(&empty), zcap, budget)?.pop().expect("one suffix"))
}

/// Closures of `prefix · suffix` for each suffix, running the prefix once.
fn dense_shared(
    prefix: &BraidWord,
    suffixes: &[BraidWord],
    zcap: Option<usize>,
    budget: Budget,
) -> Result<Vec<LaurentVZ>, EngineError> {
    let n = prefix.strands;
    let total = prefix.len() + suffixes.iter().map(BraidWord::len).max().unwrap_or(0);
    let cap = |len: usize| zcap.map_or(len, |c| c.min(len));
    if let Some(mb) = budget.mem_mb {
        // the widest level holds n! blocks of z coefficients, plus two working copies one level down
        let need = (factorial(n) * 3 * cap(total + n + 1) * 16) as u64;
        if need > mb * 1024 * 1024 {
            return Err(EngineError::BudgetExceeded {
                nodes: 0,
                reason: format!("memory limit of {mb} MB (needs about {} MB)", need / (1024 * 1024)),
            });
        }
    }
    let start = Instant::now();
    let check = |step: u64| -> Result<(), EngineError> {
        match budget.seconds {
            Some(s) if start.elapsed().as_secs_f64() > s => {
                Err(EngineError::BudgetExceeded { nodes: step, reason: format!("time limit of {s}s") })
            }
            _ => Ok(()),
        }
    };
    let t = tables(n);
    let mut cur = Level::zeros(factorial(n), 1, cap(total + 1));
    cur.data[0] = 1;
    let mut zdeg = 0;
    let mut step = 0u64;
    let mut apply = |cur: &mut Level, word: &[i32], zdeg: &mut usize| -> Result<(), EngineError> {
        for &l in word {
            check(step)?;
            step += 1;
            let i = l.unsigned_abs() as usize - 1;
            cur.times_generator(&t, i, l < 0, (*zdeg + 1).min(total));
            *zdeg = (*zdeg + 1).min(total);
        }
        Ok(())
    };
    apply(&mut cur, &prefix.word, &mut zdeg)?;
    let mut out = Vec::with_capacity(suffixes.len());
    for (k, suffix) in suffixes.iter().enumerate() {
        assert_eq!(suffix.strands, n, "strand counts differ");
        let mut z = zdeg;
        if k + 1 == suffixes.len() {
            apply(&mut cur, &suffix.word, &mut z)?;
            out.push(reduce(std::mem::replace(&mut cur, Level::zeros(0, 0, 0)), n, zcap, &check)?);
            break;
        }
        let mut c = cur.clone();
        apply(&mut c, &suffix.word, &mut z)?;
        out.push(reduce(c, n, zcap, &check)?);
    }
    Ok(out)
}

/// Applies the trace level by level, from `H_n` down to the scalars.
fn reduce(
    mut cur: Level,
    n: usize,
    zcap: Option<usize>,
    check: &dyn Fn(u64) -> Result<(), EngineError>,
) -> Result<LaurentVZ, EngineError> {
    let cap = |len: usize| zcap.map_or(len, |c| c.min(len));
    let mut vmin = 0i32;
    for m in (2..=n).rev() {
        check((n - m) as u64)?;
        let t = tables(m);
        let small = tables(m - 1);
        let (vlen, zlen) = (cur.vlen + 2, cap(cur.zlen + m));
        let basis = factorial(m - 1);
        let mut next = Level::zeros(basis, vlen, zlen);
        let mut x = Level::zeros(basis, cur.vlen, zlen);
        let (cb, xb, nb) = (cur.block(), x.block(), next.block());
        for p in 0..m {
            x.data.iter_mut().for_each(|c| *c = 0);
            for &(r, u) in &t.by_top[p] {
                for vi in 0..cur.vlen {
                    let src = r as usize * cb + vi * cur.zlen;
                    let dst = u as usize * xb + vi * zlen;
                    for k in 0..cur.zlen {
                        x.data[dst + k] += cur.data[src + k];
                    }
                }
            }
            let mut xdeg = (cur.zlen - 1).min(zlen - 1);
            if p + 2 < m {
                for g in (p..m - 2).rev() {
                    xdeg += 1;
                    x.times_generator(&small, g, false, xdeg);
                }
            }
            for u in 0..basis {
                for vi in 0..cur.vlen {
                    let src = u * xb + vi * zlen;
                    let dst = u * nb;
                    for k in 0..=xdeg.min(zlen - 1) {
                        let c = x.data[src + k];
                        if c == 0 {
                            continue;
                        }
                        if p == m - 1 {
                            // (v⁻¹ − v) X
                            next.data[dst + vi * zlen + k] += c;
                            next.data[dst + (vi + 2) * zlen + k] -= c;
                        } else if k + 1 < zlen {
                            // v⁻¹ z X σ⋯
                            next.data[dst + vi * zlen + k + 1] += c;
                        }
                    }
                }
            }
        }
        vmin -= 1;
        cur = next;
    }
    let shift = n as i32 - 1;
    let mut out = LaurentVZ::zero();
    for vi in 0..cur.vlen {
        for k in 0..cur.zlen {
            let c = cur.data[vi * cur.zlen + k];
            if c != 0 {
                out.add_term(vmin + vi as i32, k as i32 - shift, c.into());
            }
        }
    }
    Ok(out)
}
