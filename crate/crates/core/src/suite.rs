//! Automated checks of the coincidence theory identities on one image.
//!
//! Each check either passes, fails with a serialized counterexample, or is
//! skipped with the reason. Sampling is driven by a seeded ChaCha stream.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::homotopy::{class_fixed_stats, fixed_stats_of, homotopy_class, is_contractible, is_rigid, RigidSubject};
use crate::image::{DigitalImage, PointId};
use crate::invariants::{
    coincidence_spectrum, common_fixed_spectrum, common_fixed_spectrum_of_classes, divergence_degree, fixed_point_spectrum, has_fpp,
    homotopy_coincidence_spectrum, Spectrum,
};
use crate::map::{coincidence_mask_raw, is_continuous, DigitalMap};
use crate::search::{enumerate_continuous_maps, find_retraction, SearchBudget, SearchStats};

/// Subsets are enumerated exhaustively up to this size, sampled above it.
pub const EXHAUSTIVE_SUBSETS: usize = 6;
const SAMPLED_PAIRS: usize = 32;
const SAMPLED_SUBSETS: usize = 16;
const SAMPLED_MAPS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    pub stats: SearchStats,
}

#[derive(Clone, Debug, Serialize)]
#[serde(transparent)]
pub struct SuiteReport {
    pub checks: Vec<CheckRecord>,
}

impl SuiteReport {
    pub fn get(&self, name: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Fail)
    }
}

struct Outcome {
    status: CheckStatus,
    detail: String,
    witness: Option<Value>,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { status: CheckStatus::Pass, detail: detail.into(), witness: None }
}

fn fail(detail: impl Into<String>, witness: Value) -> Outcome {
    Outcome { status: CheckStatus::Fail, detail: detail.into(), witness: Some(witness) }
}

fn skip(detail: impl Into<String>) -> Outcome {
    Outcome { status: CheckStatus::Skipped, detail: detail.into(), witness: None }
}

/// Accumulates statistics of the sub-computations of one check.
#[derive(Default)]
struct Ledger {
    stats: Option<SearchStats>,
}

impl Ledger {
    fn add(&mut self, s: &SearchStats) {
        self.stats = Some(match &self.stats {
            None => s.clone(),
            Some(t) => t.combine(s),
        });
    }

    fn finish(self) -> SearchStats {
        self.stats.unwrap_or(SearchStats { nodes_visited: 0, results_found: 0, exhausted: true, elapsed: 0.0 })
    }
}

/// Budget exhaustion inside a check becomes a skip.
type Step<T> = std::result::Result<T, Outcome>;

fn lift<T>(r: Result<T>) -> Result<Step<T>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(Error::BudgetExhausted(_)) => Ok(Err(skip("budget exhausted"))),
        Err(e) => Err(e),
    }
}

fn complete_spectrum(r: Result<(Spectrum, SearchStats)>, led: &mut Ledger, what: &str) -> Result<Step<Spectrum>> {
    Ok(match lift(r)? {
        Ok((s, st)) => {
            led.add(&st);
            if s.complete {
                Ok(s)
            } else {
                Err(skip(format!("budget exhausted computing {what}")))
            }
        }
        Err(o) => Err(o),
    })
}

macro_rules! step {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return Ok(o),
        }
    };
}

struct Ctx<'a> {
    x: &'a Arc<DigitalImage>,
    budget: &'a SearchBudget,
    maps: Option<Vec<DigitalMap>>,
    enum_stats: SearchStats,
}

impl Ctx<'_> {
    fn maps(&self) -> Step<&[DigitalMap]> {
        self.maps.as_deref().ok_or_else(|| skip("budget exhausted enumerating self-maps"))
    }
}

/// Runs checks (a) to (f) on `x`.
pub fn property_suite(x: &Arc<DigitalImage>, budget: &SearchBudget, seed: u64) -> Result<SuiteReport> {
    budget.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let en = enumerate_continuous_maps(x, x, &crate::search::PartialConstraint::none(), budget)?;
    let complete = en.stats.exhausted;
    let ctx = Ctx { x, budget, maps: complete.then_some(en.maps), enum_stats: en.stats };

    type Check = fn(&Ctx, &mut ChaCha8Rng, &mut Ledger) -> Result<Outcome>;
    let checks: [(&'static str, Check); 6] = [
        ("isomorphism-conjugation", check_conjugation),
        ("retract-inclusion", check_retracts),
        ("divergence-theorem", check_divergence),
        ("fpp", check_fpp),
        ("contractible-identities", check_contractible),
        ("rigid-identities", check_rigid),
    ];
    let mut records = Vec::new();
    for (name, run) in checks {
        let mut led = Ledger::default();
        let o = run(&ctx, &mut rng, &mut led)?;
        records.push(CheckRecord { name, status: o.status, detail: o.detail, witness: o.witness, stats: led.finish() });
    }
    Ok(SuiteReport { checks: records })
}

fn assign_json(f: &DigitalMap) -> Value {
    json!(f.assignment())
}

/// (a) `#C` and `#CF` survive conjugation by a random relabeling.
fn check_conjugation(ctx: &Ctx, rng: &mut ChaCha8Rng, led: &mut Ledger) -> Result<Outcome> {
    led.add(&ctx.enum_stats);
    let maps = step!(ctx.maps());
    let n = ctx.x.size();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let y = Arc::new(ctx.x.relabeled(&perm)?);
    let conj = |f: &DigitalMap| -> Result<DigitalMap> {
        let mut a = vec![0; n];
        for p in 0..n {
            a[perm[p]] = perm[f.assignment()[p]];
        }
        DigitalMap::on(&y, a)
    };
    for _ in 0..SAMPLED_PAIRS {
        let f1 = &maps[rng.gen_range(0..maps.len())];
        let f2 = &maps[rng.gen_range(0..maps.len())];
        let (g1, g2) = (conj(f1)?, conj(f2)?);
        let c = |a: &DigitalMap, b: &DigitalMap| coincidence_mask_raw(a.assignment(), b.assignment());
        let before = (c(f1, f2).count_ones(), (c(f1, f2) & f1.fixed_mask()).count_ones());
        let after = (c(&g1, &g2).count_ones(), (c(&g1, &g2) & g1.fixed_mask()).count_ones());
        if !is_continuous(&g1) || !is_continuous(&g2) || before != after {
            let w = json!({ "perm": perm, "f1": assign_json(f1), "f2": assign_json(f2), "before": before, "after": after });
            return Ok(fail("conjugated pair changes #C or #CF", w));
        }
    }
    Ok(pass(format!("{SAMPLED_PAIRS} sampled pairs under relabeling {perm:?}")))
}

fn subsets(ctx: &Ctx, rng: &mut ChaCha8Rng) -> (Vec<u64>, bool) {
    let n = ctx.x.size();
    if n <= EXHAUSTIVE_SUBSETS {
        return ((1..(1u64 << n)).collect(), true);
    }
    let mut out: Vec<u64> = (0..SAMPLED_SUBSETS).map(|_| rng.gen::<u64>() & ctx.x.full_mask()).filter(|&m| m != 0).collect();
    out.sort_unstable();
    out.dedup();
    (out, false)
}

/// (b) `CS(A) ⊆ CS(X)` and `CFS(A) ⊆ CFS(X)` for retracts `A`.
fn check_retracts(ctx: &Ctx, rng: &mut ChaCha8Rng, led: &mut Ledger) -> Result<Outcome> {
    let x = ctx.x;
    let cs_x = step!(complete_spectrum(coincidence_spectrum(x, ctx.budget), led, "CS(X)")?);
    let cfs_x = step!(complete_spectrum(common_fixed_spectrum(x, ctx.budget), led, "CFS(X)")?);
    let (subs, exhaustive) = subsets(ctx, rng);
    let mut retracts = 0;
    for mask in &subs {
        let pts: Vec<PointId> = crate::image::bits(*mask).map(PointId).collect();
        let (r, st) = step!(lift(find_retraction(x, &pts, ctx.budget))?);
        led.add(&st);
        if r.is_none() {
            continue;
        }
        retracts += 1;
        let a = x.induced(&pts)?;
        let cs_a = step!(complete_spectrum(coincidence_spectrum(&a, ctx.budget), led, "CS(A)")?);
        let cfs_a = step!(complete_spectrum(common_fixed_spectrum(&a, ctx.budget), led, "CFS(A)")?);
        if !cs_a.is_subset(&cs_x) || !cfs_a.is_subset(&cfs_x) {
            let w = json!({ "subset": pts, "cs_a": cs_a.values, "cs_x": cs_x.values, "cfs_a": cfs_a.values, "cfs_x": cfs_x.values });
            return Ok(fail("retract spectrum escapes the image spectrum", w));
        }
    }
    let how = if exhaustive { "all" } else { "sampled" };
    Ok(pass(format!("{retracts} retracts among {} {how} subsets", subs.len())))
}

/// (c) `n - 1 ∈ CS(X)` exactly when some point has `D(x) = 1`.
fn check_divergence(ctx: &Ctx, _: &mut ChaCha8Rng, led: &mut Ledger) -> Result<Outcome> {
    let x = ctx.x;
    let n = x.size();
    if n < 2 {
        return Ok(skip("needs more than one point"));
    }
    if !x.is_connected() {
        return Ok(skip("image is not connected"));
    }
    let cs = step!(complete_spectrum(coincidence_spectrum(x, ctx.budget), led, "CS(X)")?);
    let mut witness = None;
    let mut undecided = false;
    for p in x.points() {
        let (pair, st) = step!(lift(divergence_degree(x, p, ctx.budget))?);
        led.add(&st);
        if pair.k == 1 {
            witness = Some((p, pair));
            break;
        }
        undecided |= !pair.optimal;
    }
    let left = cs.contains(n - 1);
    let right = witness.is_some();
    if !right && undecided {
        return Ok(skip("divergence search did not finish"));
    }
    if left != right {
        let w = json!({ "cs": cs.values, "witness": witness.map(|(p, pr)| json!({ "point": p, "pair": pr })) });
        return Ok(fail(format!("n-1 in CS is {left} but D(x)=1 exists is {right}"), w));
    }
    Ok(pass(format!("n-1 in CS and D(x)=1 for some x both {left}")))
}

/// (d) FPP holds exactly on the single point.
fn check_fpp(ctx: &Ctx, _: &mut ChaCha8Rng, led: &mut Ledger) -> Result<Outcome> {
    let (fpp, free, st) = step!(lift(has_fpp(ctx.x, ctx.budget))?);
    led.add(&st);
    let single = ctx.x.size() == 1;
    if fpp != single {
        let w = json!({ "fpp": fpp, "size": ctx.x.size(), "fixed_point_free": free.as_ref().map(assign_json) });
        return Ok(fail("FPP does not match the single-point case", w));
    }
    Ok(pass(format!("FPP is {fpp}")))
}

fn sample_maps<'a>(maps: &'a [DigitalMap], rng: &mut ChaCha8Rng) -> Vec<&'a DigitalMap> {
    maps.choose_multiple(rng, SAMPLED_MAPS).collect()
}

/// (e) On contractible images `CFS = F` and `HFS(f, f) = S(f)`.
fn check_contractible(ctx: &Ctx, rng: &mut ChaCha8Rng, led: &mut Ledger) -> Result<Outcome> {
    let x = ctx.x;
    if !step!(lift(is_contractible(x, ctx.budget))?) {
        return Ok(skip("not contractible"));
    }
    let f = step!(complete_spectrum(fixed_point_spectrum(x, ctx.budget), led, "F(X)")?);
    let cfs = step!(complete_spectrum(common_fixed_spectrum(x, ctx.budget), led, "CFS(X)")?);
    if f != cfs {
        return Ok(fail("CFS(X) differs from F(X)", json!({ "f": f.values, "cfs": cfs.values })));
    }
    let maps = step!(ctx.maps());
    for g in sample_maps(maps, rng) {
        let class = step!(lift(homotopy_class(g, ctx.budget))?);
        led.add(&class.stats);
        if !class.complete {
            return Ok(skip("budget exhausted computing the class of f"));
        }
        let (hfs, st) = common_fixed_spectrum_of_classes(&class, &class, ctx.budget);
        led.add(&st);
        let s = fixed_stats_of(&class).spectrum;
        if !hfs.complete {
            return Ok(skip("budget exhausted computing HFS(f,f)"));
        }
        if hfs != s {
            let w = json!({ "f": assign_json(g), "hfs": hfs.values, "s": s.values });
            return Ok(fail("HFS(f,f) differs from S(f)", w));
        }
    }
    Ok(pass("CFS = F and HFS(f,f) = S(f) on sampled maps"))
}

/// (f) On rigid images `HCS(id, c) = S(c)`, `MC(id, c) = MF(c)` and `HCS(f, id) = S(f)`;
/// on connected images where `c` is itself rigid, `HCS(f, c) = {1}`.
fn check_rigid(ctx: &Ctx, rng: &mut ChaCha8Rng, led: &mut Ledger) -> Result<Outcome> {
    let x = ctx.x;
    if !step!(lift(is_rigid(RigidSubject::Image(x), ctx.budget))?) {
        return Ok(skip("not rigid"));
    }
    let id = DigitalMap::identity(x);
    let c = DigitalMap::constant(x, x, PointId(0))?;
    let hcs = step!(complete_spectrum(homotopy_coincidence_spectrum(&id, &c, false, ctx.budget), led, "HCS(id,c)")?);
    let (sc, st) = step!(lift(class_fixed_stats(&c, ctx.budget))?);
    led.add(&st);
    if hcs != sc.spectrum || hcs.min() != Some(sc.min_fixed) {
        let w = json!({ "hcs": hcs.values, "s_c": sc.spectrum.values, "mf_c": sc.min_fixed });
        return Ok(fail("HCS(id,c) or MC(id,c) disagrees with S(c)", w));
    }
    let maps = step!(ctx.maps());
    let c_rigid = x.is_connected() && step!(lift(is_rigid(RigidSubject::Map(&c), ctx.budget))?);
    for f in sample_maps(maps, rng) {
        let h = step!(complete_spectrum(homotopy_coincidence_spectrum(f, &id, false, ctx.budget), led, "HCS(f,id)")?);
        let (s, st) = step!(lift(class_fixed_stats(f, ctx.budget))?);
        led.add(&st);
        if h != s.spectrum {
            return Ok(fail("HCS(f,id) differs from S(f)", json!({ "f": assign_json(f), "hcs": h.values, "s": s.spectrum.values })));
        }
        if c_rigid {
            let hc = step!(complete_spectrum(homotopy_coincidence_spectrum(f, &c, false, ctx.budget), led, "HCS(f,c)")?);
            if hc.values != [1] {
                return Ok(fail("HCS(f,c) is not {1} for rigid c", json!({ "f": assign_json(f), "hcs": hc.values })));
            }
        }
    }
    Ok(pass("rigid identities hold on sampled maps"))
}
