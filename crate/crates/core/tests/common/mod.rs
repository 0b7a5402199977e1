//! Brute-force references that share no code with the search engine. They
//! read only the edge list of an image.
#![allow(dead_code)]

use std::collections::BTreeSet;

use digitop::DigitalImage;

pub struct Adj {
    pub n: usize,
    m: Vec<Vec<bool>>,
}

impl Adj {
    pub fn of(x: &DigitalImage) -> Adj {
        let n = x.size();
        let mut m = vec![vec![false; n]; n];
        for (p, q) in x.edges() {
            m[p][q] = true;
            m[q][p] = true;
        }
        Adj { n, m }
    }

    pub fn adj(&self, p: usize, q: usize) -> bool {
        self.m[p][q]
    }

    pub fn close(&self, p: usize, q: usize) -> bool {
        p == q || self.m[p][q]
    }

    pub fn connected(&self, set: &[usize]) -> bool {
        let Some(&first) = set.first() else { return true };
        let mut seen = vec![first];
        let mut i = 0;
        while i < seen.len() {
            let p = seen[i];
            i += 1;
            for &q in set {
                if self.m[p][q] && !seen.contains(&q) {
                    seen.push(q);
                }
            }
        }
        seen.len() == set.len()
    }
}

/// All functions `{0..n} -> {0..m}` in lexicographic order.
pub fn all_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut a = vec![0; n];
    if m == 0 {
        return out;
    }
    loop {
        out.push(a.clone());
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            a[i] += 1;
            if a[i] < m {
                break;
            }
            a[i] = 0;
        }
    }
}

pub fn continuous(x: &Adj, y: &Adj, f: &[usize]) -> bool {
    (0..x.n).all(|p| (0..x.n).all(|q| !x.adj(p, q) || y.close(f[p], f[q])))
}

/// Image of every connected subset is connected.
pub fn continuous_by_subsets(x: &Adj, y: &Adj, f: &[usize]) -> bool {
    for bits in 1u64..(1 << x.n) {
        let s: Vec<usize> = (0..x.n).filter(|&p| bits >> p & 1 == 1).collect();
        if x.connected(&s) {
            let img: BTreeSet<usize> = s.iter().map(|&p| f[p]).collect();
            if !y.connected(&img.into_iter().collect::<Vec<_>>()) {
                return false;
            }
        }
    }
    true
}

pub fn continuous_self_maps(x: &DigitalImage) -> Vec<Vec<usize>> {
    let a = Adj::of(x);
    all_functions(a.n, a.n).into_iter().filter(|f| continuous(&a, &a, f)).collect()
}

pub fn fixed(f: &[usize]) -> usize {
    (0..f.len()).filter(|&i| f[i] == i).count()
}

pub fn coincide(f: &[usize], g: &[usize]) -> usize {
    (0..f.len()).filter(|&i| f[i] == g[i]).count()
}

pub fn common_fixed(f: &[usize], g: &[usize]) -> usize {
    (0..f.len()).filter(|&i| f[i] == i && g[i] == i).count()
}

pub fn f_spectrum(maps: &[Vec<usize>]) -> Vec<usize> {
    maps.iter().map(|f| fixed(f)).collect::<BTreeSet<_>>().into_iter().collect()
}

pub fn pair_spectrum(maps: &[Vec<usize>], count: fn(&[usize], &[usize]) -> usize) -> Vec<usize> {
    let mut s = BTreeSet::new();
    for f in maps {
        for g in maps {
            s.insert(count(f, g));
        }
    }
    s.into_iter().collect()
}

/// Layered construction of homotopies `H: X × [0, m] -> Y`: slice `t + 1`
/// ranges over continuous functions whose every track step `H(x, t) ->
/// H(x, t + 1)` is a path step in `Y`. Returns whether `g` occurs as a
/// slice for some `m` up to the number of continuous maps.
pub fn homotopic_by_layers(x: &Adj, y: &Adj, f: &[usize], g: &[usize]) -> bool {
    let slices: Vec<Vec<usize>> = all_functions(x.n, y.n).into_iter().filter(|h| continuous(x, y, h)).collect();
    let mut reached: BTreeSet<Vec<usize>> = BTreeSet::from([f.to_vec()]);
    let mut layer = vec![f.to_vec()];
    for _ in 0..slices.len() {
        if reached.contains(g) {
            return true;
        }
        let next: Vec<Vec<usize>> = slices
            .iter()
            .filter(|h| !reached.contains(*h))
            .filter(|h| layer.iter().any(|prev| (0..x.n).all(|p| y.close(prev[p], h[p]))))
            .cloned()
            .collect();
        if next.is_empty() {
            break;
        }
        reached.extend(next.iter().cloned());
        layer = next;
    }
    reached.contains(g)
}

/// `D(x)` over all ordered pairs of continuous self-maps.
pub fn divergence(maps: &[Vec<usize>], x: usize) -> Option<usize> {
    let mut best = None;
    for f in maps {
        for g in maps {
            if f[x] != g[x] {
                let k = f.len() - coincide(f, g);
                best = Some(best.map_or(k, |b: usize| b.min(k)));
            }
        }
    }
    best
}
