//! Kazhdan–Lusztig polynomials of the hyperoctahedral group (equal parameters).
//!
//! Elements are referred to by their index in [`Group`]. The table stores only nonzero
//! `P_{x,w}`, which are exactly the pairs with `x <= w` in the Bruhat order.

use crate::error::{DominoError, Result};
use crate::par::Exec;
use crate::weyl::{Group, SignedPerm};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fs;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

/// Integer polynomial in `q`, lowest degree first, without trailing zeros.
pub type Poly = Vec<i64>;

/// Largest rank computed without an explicit override.
pub const DEFAULT_MAX_RANK: usize = 4;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add_shifted(acc: &mut Poly, p: &[i64], shift: usize, factor: i64) {
    if p.is_empty() {
        return;
    }
    if acc.len() < p.len() + shift {
        acc.resize(p.len() + shift, 0);
    }
    for (i, &c) in p.iter().enumerate() {
        acc[i + shift] += factor * c;
    }
}

fn mul(a: &[i64], b: &[i64]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct KlLimits {
    pub allow_large: bool,
    pub deadline: Option<Instant>,
    pub exec: Option<Exec>,
    /// Stop once this many nonzero polynomials are stored.
    pub max_polys: Option<usize>,
}

pub struct KlTable {
    pub group: Group,
    p: Vec<HashMap<u32, Poly>>,
    mu_below: Vec<Vec<(u32, i64)>>,
}

impl KlTable {
    /// Runs the standard recursion `C_s C_v = C_{sv} + Σ μ(z, v) C_z` over elements by length.
    pub fn compute(n: usize, limits: KlLimits) -> Result<KlTable> {
        if n > DEFAULT_MAX_RANK && !limits.allow_large {
            return Err(DominoError::Limit(format!("rank {n} Kazhdan-Lusztig tables need --allow-large")));
        }
        let exec = limits.exec.unwrap_or_default();
        let g = Group::new(n);
        let size = g.order();
        let lens = &g.lengths;
        let mut p: Vec<HashMap<u32, Poly>> = Vec::with_capacity(size);
        let mut mu_below: Vec<Vec<(u32, i64)>> = Vec::with_capacity(size);
        let all: Vec<u32> = (0..size as u32).collect();
        let mut stored = 0usize;
        for w in 0..size {
            if limits.deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(DominoError::Limit(format!("timed out after {w} of {size} elements")));
            }
            if w == 0 {
                p.push(HashMap::from([(0, vec![1])]));
                mu_below.push(Vec::new());
                continue;
            }
            let s = g.ldesc[w].trailing_zeros() as usize;
            let gen = &g.left[s - 1];
            let v = gen[w] as usize;
            let zs: Vec<(u32, i64)> =
                mu_below[v].iter().copied().filter(|&(z, _)| g.ldesc[z as usize] >> s & 1 == 1).collect();
            let pv = &p[v];
            let row: Vec<Option<Poly>> = exec.map(&all, |&x| {
                if lens[x as usize] > lens[w] {
                    return None;
                }
                let sx = gen[x as usize];
                let c = usize::from(lens[sx as usize] < lens[x as usize]);
                let mut r = Vec::new();
                if let Some(a) = pv.get(&sx) {
                    add_shifted(&mut r, a, 1 - c, 1);
                }
                if let Some(b) = pv.get(&x) {
                    add_shifted(&mut r, b, c, 1);
                }
                for &(z, m) in &zs {
                    if let Some(pz) = p[z as usize].get(&x) {
                        let k = (lens[v] - lens[z as usize] + 1) as usize / 2;
                        add_shifted(&mut r, pz, k, -m);
                    }
                }
                let r = trim(r);
                (!r.is_empty()).then_some(r)
            });
            let map: HashMap<u32, Poly> =
                row.into_iter().enumerate().filter_map(|(x, r)| r.map(|r| (x as u32, r))).collect();
            let mut mus: Vec<(u32, i64)> = map
                .iter()
                .filter_map(|(&x, poly)| {
                    let d = lens[w] - lens[x as usize];
                    if d % 2 == 1 {
                        let k = (d as usize - 1) / 2;
                        poly.get(k).copied().filter(|&m| m != 0).map(|m| (x, m))
                    } else {
                        None
                    }
                })
                .collect();
            mus.sort_unstable();
            stored += map.len();
            if limits.max_polys.is_some_and(|m| stored > m) {
                return Err(DominoError::Limit(format!("polynomial budget exceeded after {w} of {size} elements")));
            }
            p.push(map);
            mu_below.push(mus);
        }
        Ok(KlTable { group: g, p, mu_below })
    }

    pub fn rank(&self) -> usize {
        self.group.n
    }

    /// `P_{x,w}` by index; empty when `x` is not below `w`.
    pub fn p(&self, x: u32, w: u32) -> &[i64] {
        self.p[w as usize].get(&x).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn kl(&self, u: &SignedPerm, v: &SignedPerm) -> Result<Poly> {
        if u.rank() != self.rank() || v.rank() != self.rank() {
            return Err(DominoError::RankMismatch(u.rank().max(v.rank()), self.rank()));
        }
        Ok(self.p(self.group.idx(u), self.group.idx(v)).to_vec())
    }

    /// `μ(x, w)`, symmetric in its arguments.
    pub fn mu(&self, x: u32, w: u32) -> i64 {
        let (lo, hi) = if self.group.lengths[x as usize] <= self.group.lengths[w as usize] { (x, w) } else { (w, x) };
        self.mu_below[hi as usize].binary_search_by_key(&lo, |&(z, _)| z).map(|i| self.mu_below[hi as usize][i].1).unwrap_or(0)
    }

    /// Pairs `(x, w)` with `x < w` and `μ(x, w) != 0`.
    pub fn mu_pairs(&self) -> impl Iterator<Item = (u32, u32, i64)> + '_ {
        self.mu_below.iter().enumerate().flat_map(|(w, v)| v.iter().map(move |&(x, m)| (x, w as u32, m)))
    }

    /// Number of stored nonzero polynomials.
    pub fn len(&self) -> usize {
        self.p.iter().map(HashMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Checks `Σ_z (-1)^{ℓ(x)+ℓ(z)} P_{x,z} P_{w_0 w, w_0 z} = δ_{x,w}` on every interval.
    /// Returns the number of intervals checked and the failing pairs.
    pub fn check_inversion(&self) -> (usize, Vec<(u32, u32)>) {
        self.check_inversion_until(None).expect("no deadline")
    }

    /// [`KlTable::check_inversion`], abandoned with a limit error at `deadline`.
    pub fn check_inversion_until(&self, deadline: Option<Instant>) -> Result<(usize, Vec<(u32, u32)>)> {
        let g = &self.group;
        let w0 = |z: u32| g.idx(&SignedPerm::longest(g.n).mul(&g.elems[z as usize]));
        let neg: Vec<u32> = (0..g.order() as u32).map(w0).collect();
        let mut checked = 0;
        let mut failures = Vec::new();
        for w in 0..g.order() as u32 {
            if deadline.is_some_and(|d| Instant::now() >= d) {
                return Err(DominoError::Limit(format!("inversion check timed out after {w} of {} elements", g.order())));
            }
            for &x in self.p[w as usize].keys() {
                checked += 1;
                let mut acc: Poly = Vec::new();
                for z in 0..g.order() as u32 {
                    let a = self.p(x, z);
                    if a.is_empty() {
                        continue;
                    }
                    let b = self.p(neg[w as usize], neg[z as usize]);
                    if b.is_empty() {
                        continue;
                    }
                    let sign = if (g.lengths[x as usize] + g.lengths[z as usize]).is_multiple_of(2) { 1 } else { -1 };
                    add_shifted(&mut acc, &mul(a, b), 0, sign);
                }
                let acc = trim(acc);
                let expect: Poly = if x == w { vec![1] } else { Vec::new() };
                if acc != expect {
                    failures.push((x, w));
                }
            }
        }
        failures.sort_unstable();
        Ok((checked, failures))
    }

    fn cache_lines(&self) -> Vec<CacheLine> {
        let g = &self.group;
        let mut out = Vec::with_capacity(self.len());
        for w in 0..g.order() {
            let mut xs: Vec<&u32> = self.p[w].keys().collect();
            xs.sort_unstable();
            for &x in xs {
                out.push(CacheLine {
                    n: g.n,
                    u: g.elems[x as usize].to_string(),
                    v: g.elems[w].to_string(),
                    p: self.p[w][&x].clone(),
                });
            }
        }
        out
    }

    /// Writes the table as line-delimited JSON.
    pub fn write_cache(&self, path: &Path) -> Result<()> {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        let mut f = BufWriter::new(fs::File::create(path)?);
        for line in self.cache_lines() {
            serde_json::to_writer(&mut f, &line)?;
            f.write_all(b"\n")?;
        }
        f.flush()?;
        Ok(())
    }

    /// Reads a table written by [`KlTable::write_cache`].
    pub fn read_cache(n: usize, path: &Path) -> Result<KlTable> {
        let g = Group::new(n);
        let mut p: Vec<HashMap<u32, Poly>> = vec![HashMap::new(); g.order()];
        for line in BufReader::new(fs::File::open(path)?).lines() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let c: CacheLine = serde_json::from_str(&line)?;
            if c.n != n {
                return Err(DominoError::RankMismatch(c.n, n));
            }
            let u = g.index.get(&c.u.parse()?).copied();
            let v = g.index.get(&c.v.parse()?).copied();
            match (u, v) {
                (Some(u), Some(v)) => {
                    p[v as usize].insert(u, c.p);
                }
                _ => return Err(DominoError::Parse(format!("cache entry outside rank {n}"))),
            }
        }
        let lens = &g.lengths;
        let mu_below = p
            .iter()
            .enumerate()
            .map(|(w, m)| {
                let mut v: Vec<(u32, i64)> = m
                    .iter()
                    .filter_map(|(&x, poly)| {
                        let d = lens[w] - lens[x as usize];
                        (d % 2 == 1).then(|| poly.get((d as usize - 1) / 2).copied()).flatten().filter(|&c| c != 0).map(|c| (x, c))
                    })
                    .collect();
                v.sort_unstable();
                v
            })
            .collect();
        Ok(KlTable { group: g, p, mu_below })
    }

    /// Loads `kl-n{n}.jsonl` from `dir` if present, otherwise computes and stores it.
    pub fn cached(n: usize, dir: Option<&Path>, limits: KlLimits) -> Result<KlTable> {
        let Some(dir) = dir else { return KlTable::compute(n, limits) };
        let path = cache_path(dir, n);
        if path.exists() {
            if let Ok(t) = KlTable::read_cache(n, &path) {
                return Ok(t);
            }
        }
        let t = KlTable::compute(n, limits)?;
        t.write_cache(&path)?;
        Ok(t)
    }

    /// True when both tables hold identical polynomials.
    pub fn same_as(&self, other: &KlTable) -> bool {
        self.rank() == other.rank() && self.p == other.p
    }
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    n: usize,
    u: String,
    v: String,
    p: Vec<i64>,
}

pub fn cache_path(dir: &Path, n: usize) -> PathBuf {
    dir.join(format!("kl-n{n}.jsonl"))
}

/// The directory named by `DOMINO_CACHE_DIR`, if set.
pub fn cache_dir_from_env() -> Option<PathBuf> {
    std::env::var_os("DOMINO_CACHE_DIR").filter(|v| !v.is_empty()).map(PathBuf::from)
}
