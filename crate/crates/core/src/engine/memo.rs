use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::OnceLock;
use std::time::Instant;

use crate::diagram::{canonical_code, glue_closed, simplify, Crossing, Diagram, UnionFind};
use crate::laurent::LaurentVZ;

use super::{EngineError, MemoCache};

/// Resource limits for one computation. `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Budget {
    pub seconds: Option<f64>,
    pub mem_mb: Option<u64>,
}

const PARALLEL_FROM: usize = 10;

struct Ctx<'a> {
    cache: &'a MemoCache,
    budget: Budget,
    start: Instant,
    nodes: AtomicU64,
    /// Set once a limit is hit so that every branch stops, not only the
    /// one that noticed.
    stop: AtomicBool,
    reason: OnceLock<String>,
}

impl Ctx<'_> {
    fn tick(&self) -> Result<(), EngineError> {
        let nodes = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.stop.load(Ordering::Relaxed) {
            let reason = self.reason.get().cloned().unwrap_or_default();
            return Err(EngineError::BudgetExceeded { nodes, reason });
        }
        if !nodes.is_multiple_of(64) {
            return Ok(());
        }
        let reason = match (self.budget.seconds, self.budget.mem_mb) {
            (Some(s), _) if self.start.elapsed().as_secs_f64() > s => format!("time limit of {s}s"),
            (_, Some(mb)) if self.cache.approx_bytes() > mb * 1024 * 1024 => format!("memory limit of {mb} MB"),
            _ => return Ok(()),
        };
        let reason = self.reason.get_or_init(|| reason).clone();
        self.stop.store(true, Ordering::Relaxed);
        Err(EngineError::BudgetExceeded { nodes, reason })
    }
}

pub fn homfly_memo(d: &Diagram, cache: &MemoCache) -> Result<LaurentVZ, EngineError> {
    homfly_memo_with_budget(d, cache, Budget::default())
}

/// Framed Homfly by a skein tree over reduced, split and cached subdiagrams.
pub fn homfly_memo_with_budget(d: &Diagram, cache: &MemoCache, budget: Budget) -> Result<LaurentVZ, EngineError> {
    let ctx = Ctx { cache, budget, start: Instant::now(), nodes: AtomicU64::new(0), stop: AtomicBool::new(false), reason: OnceLock::new() };
    eval(&ctx, d)
}

fn eval(ctx: &Ctx, d: &Diagram) -> Result<LaurentVZ, EngineError> {
    let (d, curl) = simplify(d);
    let (pieces, loops) = split(&d);
    let k = pieces.len() + loops;
    let mut acc = LaurentVZ::delta().pow(k.saturating_sub(1) as u32);
    for p in &pieces {
        acc = &acc * &eval_piece(ctx, p)?;
    }
    Ok(acc.shift(-(curl as i32), 0))
}

fn eval_piece(ctx: &Ctx, d: &Diagram) -> Result<LaurentVZ, EngineError> {
    ctx.tick()?;
    let key = canonical_code(d);
    if let Some(v) = ctx.cache.get(&key) {
        return Ok(v);
    }
    let cs = d.crossings();
    let value = match first_bad(cs) {
        None => LaurentVZ::delta().pow(component_count(cs) as u32 - 1).shift(-(d.writhe() as i32), 0),
        Some(c) => {
            let x = cs[c];
            let mut sw = cs.to_vec();
            sw[c] = x.switched();
            let switched = Diagram::from_parts(sw, Vec::new());
            let rest: Vec<Crossing> = cs.iter().enumerate().filter(|(i, _)| *i != c).map(|(_, c)| *c).collect();
            let smoothed = glue_closed(rest, Vec::new(), &[(x.under_in, x.over_out), (x.over_in, x.under_out)]);
            let (a, b) = if cs.len() >= PARALLEL_FROM {
                rayon::join(|| eval(ctx, &switched), || eval(ctx, &smoothed))
            } else {
                (eval(ctx, &switched), eval(ctx, &smoothed))
            };
            let zb = b?.shift(0, 1);
            if x.sign > 0 {
                &a? + &zb
            } else {
                &a? - &zb
            }
        }
    };
    ctx.cache.insert(key, value.clone());
    Ok(value)
}

/// Connected pieces, each relabeled, and the number of free loops.
fn split(d: &Diagram) -> (Vec<Diagram>, usize) {
    let cs = d.crossings();
    let mut uf = UnionFind::new(cs.len());
    let mut owner: HashMap<u32, usize> = HashMap::new();
    for (i, c) in cs.iter().enumerate() {
        for a in c.slots() {
            if let Some(&j) = owner.get(&a) {
                uf.union(i, j);
            } else {
                owner.insert(a, i);
            }
        }
    }
    let mut groups: HashMap<usize, Vec<Crossing>> = HashMap::new();
    let mut order = Vec::new();
    for (i, c) in cs.iter().enumerate() {
        let r = uf.find(i);
        groups.entry(r).or_insert_with(|| {
            order.push(r);
            Vec::new()
        });
        groups.get_mut(&r).expect("group").push(*c);
    }
    let pieces = order
        .into_iter()
        .map(|r| Diagram::from_parts(groups.remove(&r).expect("group"), Vec::new()).relabeled())
        .collect();
    (pieces, d.free_loops().len())
}

struct Cycles {
    /// Arc sequence of each component.
    comps: Vec<Vec<usize>>,
    /// Head of each arc: crossing and whether the arc is the over strand.
    head: Vec<(usize, bool)>,
    /// Component of each arc.
    comp_of: Vec<usize>,
}

fn cycles(cs: &[Crossing]) -> Cycles {
    let n = 2 * cs.len();
    let mut next = vec![0usize; n];
    let mut head = vec![(0usize, false); n];
    for (i, c) in cs.iter().enumerate() {
        next[c.over_in as usize] = c.over_out as usize;
        next[c.under_in as usize] = c.under_out as usize;
        head[c.over_in as usize] = (i, true);
        head[c.under_in as usize] = (i, false);
    }
    let mut comp_of = vec![usize::MAX; n];
    let mut comps = Vec::new();
    for s in 0..n {
        if comp_of[s] != usize::MAX {
            continue;
        }
        let mut cyc = Vec::new();
        let mut a = s;
        while comp_of[a] == usize::MAX {
            comp_of[a] = comps.len();
            cyc.push(a);
            a = next[a];
        }
        comps.push(cyc);
    }
    Cycles { comps, head, comp_of }
}

fn component_count(cs: &[Crossing]) -> usize {
    cycles(cs).comps.len()
}

/// Picks base points and a component order minimising the number of
/// crossings first met from below, and returns the first such crossing
/// along that traversal, or `None` when the diagram is already descending.
fn first_bad(cs: &[Crossing]) -> Option<usize> {
    let cy = cycles(cs);
    let k = cy.comps.len();
    let mut base = Vec::with_capacity(k);
    for comp in &cy.comps {
        let len = comp.len();
        let mut seen: HashMap<usize, usize> = HashMap::new();
        let mut over_at = HashMap::new();
        let mut under_at = HashMap::new();
        for (idx, &a) in comp.iter().enumerate() {
            let (c, over) = cy.head[a];
            *seen.entry(c).or_default() += 1;
            if over {
                over_at.insert(c, idx);
            } else {
                under_at.insert(c, idx);
            }
        }
        // base s makes crossing c bad when s lies in the cyclic range (over, under]
        let mut diff = vec![0i64; len + 1];
        for (c, &cnt) in &seen {
            if cnt < 2 {
                continue;
            }
            let (i, j) = (over_at[c], under_at[c]);
            let lo = (i + 1) % len;
            if lo <= j {
                diff[lo] += 1;
                diff[j + 1] -= 1;
            } else {
                diff[lo] += 1;
                diff[len] -= 1;
                diff[0] += 1;
                diff[j + 1] -= 1;
            }
        }
        let mut run = 0;
        let mut best = (i64::MAX, 0);
        for (s, d) in diff.iter().take(len).enumerate() {
            run += d;
            if run < best.0 {
                best = (run, s);
            }
        }
        base.push(best.1);
    }
    // w[a][b]: crossings where component a passes over component b
    let mut w = vec![vec![0u32; k]; k];
    for c in cs {
        let (a, b) = (cy.comp_of[c.over_in as usize], cy.comp_of[c.under_in as usize]);
        if a != b {
            w[a][b] += 1;
        }
    }
    let order = component_order(&w);
    let mut met = vec![false; cs.len()];
    for &ci in &order {
        let comp = &cy.comps[ci];
        for t in 0..comp.len() {
            let a = comp[(base[ci] + t) % comp.len()];
            let (c, over) = cy.head[a];
            if !met[c] {
                if !over {
                    return Some(c);
                }
                met[c] = true;
            }
        }
    }
    None
}

/// Order of components minimising crossings where a later component passes
/// over an earlier one.
fn component_order(w: &[Vec<u32>]) -> Vec<usize> {
    let k = w.len();
    if k <= 14 {
        let full = 1usize << k;
        let mut dp = vec![(u32::MAX, usize::MAX); full];
        dp[0] = (0, usize::MAX);
        for s in 0..full {
            if dp[s].0 == u32::MAX {
                continue;
            }
            for c in 0..k {
                if s >> c & 1 == 1 {
                    continue;
                }
                let cost: u32 = (0..k).filter(|x| s >> x & 1 == 1).map(|x| w[c][x]).sum();
                let t = s | 1 << c;
                if dp[s].0 + cost < dp[t].0 {
                    dp[t] = (dp[s].0 + cost, c);
                }
            }
        }
        let mut order = Vec::with_capacity(k);
        let mut s = full - 1;
        while s != 0 {
            let c = dp[s].1;
            order.push(c);
            s &= !(1 << c);
        }
        order.reverse();
        order
    } else {
        // greedy: repeatedly take the component passing over the fewest remaining ones
        let mut left: Vec<usize> = (0..k).collect();
        let mut order = Vec::with_capacity(k);
        while !left.is_empty() {
            let (pos, _) = left
                .iter()
                .enumerate()
                .min_by_key(|(_, &c)| left.iter().map(|&x| w[x][c]).sum::<u32>())
                .expect("nonempty");
            order.push(left.remove(pos));
        }
        order
    }
}
