//! Deterministic sampling of down-going chains in the branching graphs.
//!
//! Randomness is drawn from a counter-keyed ChaCha stream so that every
//! (seed, chain index) pair yields the same chain on every run and chains
//! can be generated independently in any order. Inverse-CDF selection
//! compares exact rational prefix sums against the raw 64-bit draw, so
//! exact-mode sampling is bit-reproducible across platforms.

use std::collections::BTreeMap;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rug::{Integer, Rational};

use crate::arith::{EvalConfig, HalfInt, Mode, Scalar};
use crate::chars::schur::schur_principal;
use crate::chars::skewbc::bc_skew_char;
use crate::chars::weyl::bcd_principal;
use crate::chars::{GroupType, NonnegSignature, Signature};
use crate::error::{QError, Result};

use super::kernels::{kernel_a_step, kernel_bc_step};
use super::{BranchingGraph, KernelRow};

/// One sampled down-going chain: `levels[0]` is the starting label and each
/// later entry is one level lower.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSample {
    pub levels: Vec<Signature>,
    pub seed: u64,
    pub chain_index: u64,
}

impl ChainSample {
    /// The final (lowest-level) label of the chain.
    pub fn bottom(&self) -> &Signature {
        self.levels.last().expect("chains are never empty")
    }
}

/// The deterministic generator for one chain: a ChaCha8 stream keyed by the
/// experiment seed (bytes 0–7, little endian) and the chain index (bytes
/// 8–15), remaining key bytes zero.
pub fn chain_rng(seed: u64, chain_index: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&chain_index.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// Inverse-CDF selection from a row: accumulate masses in ascending key
/// order and return the first key whose prefix sum exceeds draw/2⁶⁴.
///
/// Exact rows are compared exactly (bit-reproducible); float rows compare
/// real parts as doubles. Rounding defects fall through to the last key.
pub fn pick_from_row<'a>(row: &'a KernelRow, rng: &mut impl RngCore) -> Result<&'a Signature> {
    let mut entries = row.iter();
    let (first_key, first_mass) = entries
        .next()
        .ok_or_else(|| QError::BadShape("cannot sample from an empty row".into()))?;
    let draw = rng.next_u64();
    if first_mass.is_exact() {
        let threshold = Rational::from((Integer::from(draw), Integer::from(1u128 << 64)));
        let mut cum = first_mass
            .as_rational()
            .expect("checked exact above")
            .clone();
        if cum > threshold {
            return Ok(first_key);
        }
        let mut last = first_key;
        for (key, mass) in entries {
            let r = mass.as_rational().ok_or_else(|| {
                QError::InvalidConfig("row mixes exact and float masses".into())
            })?;
            cum += r;
            last = key;
            if cum > threshold {
                return Ok(key);
            }
        }
        Ok(last)
    } else {
        let threshold = (draw >> 11) as f64 * (1.0 / 9007199254740992.0);
        let real = |m: &Scalar| match m {
            Scalar::Exact(r) => r.to_f64(),
            Scalar::Float(c) => c.re.to_f64(),
        };
        let mut cum = real(first_mass);
        if cum > threshold {
            return Ok(first_key);
        }
        let mut last = first_key;
        for (key, mass) in entries {
            cum += real(mass);
            last = key;
            if cum > threshold {
                return Ok(key);
            }
        }
        Ok(last)
    }
}

/// Chain sampler with a per-label row cache, so repeated chains over a small
/// reachable set of labels compute each one-step row once.
pub struct ChainSampler<'a> {
    graph: BranchingGraph,
    cfg: &'a EvalConfig,
    rows: BTreeMap<Signature, KernelRow>,
}

impl<'a> ChainSampler<'a> {
    pub fn new(graph: BranchingGraph, cfg: &'a EvalConfig) -> Self {
        ChainSampler {
            graph,
            cfg,
            rows: BTreeMap::new(),
        }
    }

    /// The cached one-step row out of `lambda` (computed on first use).
    pub fn row(&mut self, lambda: &Signature) -> Result<&KernelRow> {
        if !self.rows.contains_key(lambda) {
            let row = match &self.graph {
                BranchingGraph::SymA(sigma) => {
                    kernel_a_step(lambda, sigma.sign(lambda.len() as u64), self.cfg)?
                }
                BranchingGraph::Bc(group) => {
                    let label = NonnegSignature::from_signature(lambda.clone())?;
                    kernel_bc_step(*group, &label, self.cfg)?
                }
            };
            self.rows.insert(lambda.clone(), row);
        }
        Ok(self.rows.get(lambda).expect("inserted above"))
    }

    /// Number of distinct labels whose rows have been materialized.
    pub fn cached_rows(&self) -> usize {
        self.rows.len()
    }

    /// Sample the chain from `top` down to level `k` for one (seed, chain
    /// index) pair. `k` may equal the starting level, giving the one-element
    /// chain.
    pub fn sample(
        &mut self,
        top: &Signature,
        k: usize,
        seed: u64,
        chain_index: u64,
    ) -> Result<ChainSample> {
        if k > top.len() {
            return Err(QError::InvalidConfig(format!(
                "target level {k} exceeds the starting level {}",
                top.len()
            )));
        }
        let mut rng = chain_rng(seed, chain_index);
        let mut levels = Vec::with_capacity(top.len() - k + 1);
        levels.push(top.clone());
        while levels.last().expect("nonempty").len() > k {
            let cur = levels.last().expect("nonempty").clone();
            let row = self.row(&cur)?;
            let next = pick_from_row(row, &mut rng)?.clone();
            levels.push(next);
        }
        Ok(ChainSample {
            levels,
            seed,
            chain_index,
        })
    }
}

/// One-shot convenience: sample a single chain without keeping the row cache.
pub fn sample_chain(
    graph: &BranchingGraph,
    top: &Signature,
    k: usize,
    seed: u64,
    chain_index: u64,
    cfg: &EvalConfig,
) -> Result<ChainSample> {
    ChainSampler::new(graph.clone(), cfg).sample(top, k, seed, chain_index)
}

/// Which family a lazy sampler steps in.
enum LazyKind {
    A { sign: i8 },
    Bc { group: GroupType, u: Scalar },
}

/// Lazy one-step sampler for rows whose full support is too large to
/// materialize (a staircase label of length N+1 has ~3^N lower neighbours).
///
/// The mass of a one-step row concentrates near an "anchor" label (the
/// interlacing bound the measure prefers): each unit of deviation costs a
/// positive power of q. The sampler enumerates the support in shells of
/// fixed total deviation Σ_i |μ_i − anchor_i|, keeping exact prefix sums,
/// and expands shells only until the prefix sum exceeds the current draw.
/// Selection is exact, unbiased and deterministic; typical draws touch a
/// handful of shells.
///
/// Exact mode only.
pub struct LazyStepSampler<'a> {
    kind: LazyKind,
    lambda: Signature,
    cfg: &'a EvalConfig,
    den: Rational,
    lo: Vec<i64>,
    hi: Vec<i64>,
    anchor: Vec<i64>,
    /// suffix_max[i] = max deviation achievable from position i on.
    suffix_max: Vec<i64>,
    /// Discovered entries in shell order, with exact masses.
    found: Vec<(Signature, Rational)>,
    /// Prefix sums aligned with `found`.
    cum: Vec<Rational>,
    next_dev: i64,
    max_dev: i64,
}

impl<'a> LazyStepSampler<'a> {
    fn build(
        kind: LazyKind,
        lambda: Signature,
        den: Rational,
        lo: Vec<i64>,
        hi: Vec<i64>,
        anchor: Vec<i64>,
        cfg: &'a EvalConfig,
    ) -> Self {
        let n = lo.len();
        let mut suffix_max = vec![0i64; n + 1];
        for i in (0..n).rev() {
            suffix_max[i] = suffix_max[i + 1] + (hi[i] - anchor[i]).max(anchor[i] - lo[i]);
        }
        let max_dev = suffix_max[0];
        LazyStepSampler {
            kind,
            lambda,
            cfg,
            den,
            lo,
            hi,
            anchor,
            suffix_max,
            found: Vec::new(),
            cum: Vec::new(),
            next_dev: 0,
            max_dev,
        }
    }

    /// Lazy sampler for one B/C/D link out of `lambda`. The anchor is the
    /// lower-shifted label μ_i = λ_{i+1}, the mode of the row.
    pub fn bc(group: GroupType, lambda: NonnegSignature, cfg: &'a EvalConfig) -> Result<Self> {
        if cfg.mode != Mode::Exact {
            return Err(QError::InvalidConfig(
                "lazy row sampling requires exact arithmetic".into(),
            ));
        }
        let lvl = lambda.len();
        if lvl == 0 {
            return Err(QError::BadShape(
                "one-step links need a signature of positive length".into(),
            ));
        }
        let n = lvl - 1;
        let u = cfg.q_power(HalfInt::new_doubled(
            2 * n as i64 + group.epsilon().doubled(),
        ))?;
        let den = bcd_principal(group, &lambda, lvl, cfg)?
            .as_rational()
            .expect("exact mode evaluation is rational")
            .clone();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        for i in 1..=n {
            lo.push(lambda.part(i + 2));
            hi.push(lambda.part(i));
            anchor.push(lambda.part(i + 1));
        }
        Ok(Self::build(
            LazyKind::Bc { group, u },
            (*lambda).clone(),
            den,
            lo,
            hi,
            anchor,
            cfg,
        ))
    }

    /// Lazy sampler for one type-A link out of `lambda` with the given
    /// steering sign. The anchor is the interlacing bound the sign prefers:
    /// the upper one μ_i = λ_i for +1, the lower one μ_i = λ_{i+1} for −1.
    pub fn type_a(lambda: Signature, sign: i8, cfg: &'a EvalConfig) -> Result<Self> {
        if cfg.mode != Mode::Exact {
            return Err(QError::InvalidConfig(
                "lazy row sampling requires exact arithmetic".into(),
            ));
        }
        if sign != 1 && sign != -1 {
            return Err(QError::InvalidConfig(format!(
                "steering sign must be ±1, got {sign}"
            )));
        }
        let lvl = lambda.len();
        if lvl == 0 {
            return Err(QError::BadShape(
                "one-step links need a signature of positive length".into(),
            ));
        }
        let n = lvl - 1;
        let den = schur_principal(&lambda, lvl, cfg)?
            .as_rational()
            .expect("exact mode evaluation is rational")
            .clone();
        let mut lo = Vec::with_capacity(n);
        let mut hi = Vec::with_capacity(n);
        let mut anchor = Vec::with_capacity(n);
        for i in 1..=n {
            lo.push(lambda.part(i + 1));
            hi.push(lambda.part(i));
            anchor.push(if sign > 0 {
                lambda.part(i)
            } else {
                lambda.part(i + 1)
            });
        }
        Ok(Self::build(
            LazyKind::A { sign },
            lambda,
            den,
            lo,
            hi,
            anchor,
            cfg,
        ))
    }

    /// Whether every shell has been expanded.
    pub fn exhausted(&self) -> bool {
        self.next_dev > self.max_dev
    }

    /// Number of shells expanded so far.
    pub fn shells_expanded(&self) -> i64 {
        self.next_dev
    }

    /// Entries discovered so far, in shell order.
    pub fn entries(&self) -> impl Iterator<Item = &(Signature, Rational)> {
        self.found.iter()
    }

    /// Total discovered mass (1 after exhaustion).
    pub fn total(&self) -> Rational {
        self.cum.last().cloned().unwrap_or_default()
    }

    fn mass_of(&self, mu: &Signature) -> Result<Rational> {
        let lvl = self.lambda.len();
        let num = match &self.kind {
            LazyKind::A { sign } => {
                let exponent = if *sign > 0 {
                    (lvl as i64 - 1) * (self.lambda.size() - mu.size())
                } else {
                    mu.size()
                };
                self.cfg
                    .q_int_power(exponent)
                    .mul(&schur_principal(mu, lvl - 1, self.cfg)?)
            }
            LazyKind::Bc { group, u } => {
                let lam = NonnegSignature::from_signature(self.lambda.clone())
                    .expect("B/C/D samplers are built from nonnegative labels");
                let mu = NonnegSignature::from_signature(mu.clone())
                    .expect("B/C/D boxes stay nonnegative");
                let skew = bc_skew_char(*group, &lam, &mu, u)?;
                if skew.is_zero() {
                    return Ok(Rational::new());
                }
                let principal = if lvl == 1 {
                    self.cfg.one()
                } else {
                    bcd_principal(*group, &mu, lvl - 1, self.cfg)?
                };
                principal.mul(&skew)
            }
        };
        let r = num
            .as_rational()
            .expect("exact mode evaluation is rational")
            .clone();
        Ok(r / &self.den)
    }

    /// Expand the next deviation shell, appending its entries and prefix
    /// sums. No-op once exhausted.
    pub fn expand_shell(&mut self) -> Result<()> {
        if self.exhausted() {
            return Ok(());
        }
        let d = self.next_dev;
        self.next_dev += 1;
        let members = shell_members(&self.lo, &self.hi, &self.anchor, &self.suffix_max, d);
        for parts in members {
            let mu = Signature::new(parts).expect("shell enumeration yields decreasing parts");
            let mass = self.mass_of(&mu)?;
            if mass == 0 {
                continue;
            }
            let prev = self.cum.last().cloned().unwrap_or_default();
            self.cum.push(prev + &mass);
            self.found.push((mu, mass));
        }
        Ok(())
    }

    /// Expand every remaining shell (test and audit aid).
    pub fn expand_all(&mut self) -> Result<()> {
        while !self.exhausted() {
            self.expand_shell()?;
        }
        Ok(())
    }

    /// Exact inverse-CDF selection for one raw 64-bit draw: the first entry
    /// (in shell order) whose prefix sum exceeds draw/2⁶⁴, expanding shells
    /// on demand.
    pub fn sample(&mut self, draw: u64) -> Result<&Signature> {
        let threshold = Rational::from((Integer::from(draw), Integer::from(1u128 << 64)));
        while !self.exhausted() && self.cum.last().map_or(true, |c| *c <= threshold) {
            self.expand_shell()?;
        }
        if self.found.is_empty() {
            return Err(QError::BadShape("empty sampling row".into()));
        }
        let mut lo = 0usize;
        let mut hi = self.cum.len() - 1;
        while lo < hi {
            let mid = (lo + hi) / 2;
            if self.cum[mid] > threshold {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(&self.found[lo].0)
    }
}

/// All weakly decreasing tuples v with lo_i ≤ v_i ≤ hi_i and
/// Σ|v_i − anchor_i| = d, in lexicographically decreasing order.
/// `suffix_max[i]` must bound the deviation achievable from position i on.
fn shell_members(
    lo: &[i64],
    hi: &[i64],
    anchor: &[i64],
    suffix_max: &[i64],
    d: i64,
) -> Vec<Vec<i64>> {
    fn rec(
        lo: &[i64],
        hi: &[i64],
        anchor: &[i64],
        sm: &[i64],
        idx: usize,
        prev: i64,
        budget: i64,
        parts: &mut Vec<i64>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if idx == lo.len() {
            if budget == 0 {
                out.push(parts.clone());
            }
            return;
        }
        let top = hi[idx].min(prev);
        let mut v = top;
        while v >= lo[idx] {
            let cost = (v - anchor[idx]).abs();
            if cost <= budget && budget - cost <= sm[idx + 1] {
                parts.push(v);
                rec(lo, hi, anchor, sm, idx + 1, v, budget - cost, parts, out);
                parts.pop();
            }
            v -= 1;
        }
    }
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(lo.len());
    rec(lo, hi, anchor, suffix_max, 0, i64::MAX, d, &mut parts, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::SignSequence;

    fn sig(parts: &[i64]) -> Signature {
        Signature::new(parts.to_vec()).unwrap()
    }

    fn nsig(parts: &[i64]) -> NonnegSignature {
        NonnegSignature::new(parts.to_vec()).unwrap()
    }

    fn cfg_half() -> EvalConfig {
        EvalConfig::exact(Rational::from((1, 2))).unwrap()
    }

    #[test]
    fn chain_rng_is_keyed_by_seed_and_index() {
        let a = chain_rng(7, 0).next_u64();
        let b = chain_rng(7, 1).next_u64();
        let c = chain_rng(8, 0).next_u64();
        let a2 = chain_rng(7, 0).next_u64();
        assert_eq!(a, a2);
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn zero_step_chain_is_the_top_label() {
        let cfg = cfg_half();
        let graph = BranchingGraph::SymA(SignSequence::AllPlus);
        let top = sig(&[2, 0, -1]);
        let chain = sample_chain(&graph, &top, 3, 1, 0, &cfg).unwrap();
        assert_eq!(chain.levels, vec![top]);
    }

    #[test]
    fn chains_are_reproducible_and_interlaced() {
        let cfg = cfg_half();
        let graph = BranchingGraph::SymA(SignSequence::Alternating);
        let top = sig(&[2, 1, 0, -1]);
        let mut sampler = ChainSampler::new(graph.clone(), &cfg);
        let one = sampler.sample(&top, 1, 42, 5).unwrap();
        let two = sample_chain(&graph, &top, 1, 42, 5, &cfg).unwrap();
        assert_eq!(one, two);
        assert_eq!(one.levels.len(), 4);
        assert_eq!(one.bottom().len(), 1);
        for w in one.levels.windows(2) {
            let (upper, lower) = (&w[0], &w[1]);
            assert_eq!(lower.len() + 1, upper.len());
            for i in 1..=lower.len() {
                assert!(lower.part(i) <= upper.part(i));
                assert!(lower.part(i) >= upper.part(i + 1));
            }
        }
    }

    #[test]
    fn one_step_frequencies_match_the_row() {
        // λ = (1,0), plus sign: masses 1/3 at (0) and 2/3 at (1)
        let cfg = cfg_half();
        let graph = BranchingGraph::SymA(SignSequence::AllPlus);
        let top = sig(&[1, 0]);
        let mut sampler = ChainSampler::new(graph, &cfg);
        let trials = 3000u64;
        let mut hits = 0u64;
        for i in 0..trials {
            let chain = sampler.sample(&top, 1, 9, i).unwrap();
            if *chain.bottom() == sig(&[1]) {
                hits += 1;
            }
        }
        let freq = hits as f64 / trials as f64;
        let p = 2.0 / 3.0;
        let se = (p * (1.0 - p) / trials as f64).sqrt();
        assert!(
            (freq - p).abs() < 4.0 * se,
            "freq {freq} too far from {p} (se {se})"
        );
        assert_eq!(sampler.cached_rows(), 1);
    }

    #[test]
    fn bc_chains_walk_the_symplectic_graph() {
        let cfg = cfg_half();
        let graph = BranchingGraph::Bc(GroupType::C);
        let top = sig(&[2, 1, 0, 0]);
        let mut sampler = ChainSampler::new(graph, &cfg);
        for i in 0..25 {
            let chain = sampler.sample(&top, 2, 3, i).unwrap();
            assert_eq!(chain.levels.len(), 3);
            for w in chain.levels.windows(2) {
                let (upper, lower) = (&w[0], &w[1]);
                for i in 1..=lower.len() {
                    assert!(lower.part(i) <= upper.part(i));
                    assert!(lower.part(i) >= upper.part(i + 2));
                    assert!(lower.part(i) >= 0);
                }
            }
        }
    }

    #[test]
    fn lazy_sampler_matches_the_full_row() {
        let cfg = cfg_half();
        let lam = nsig(&[3, 2, 1, 0]);
        for group in [GroupType::C, GroupType::D] {
            let mut lazy = LazyStepSampler::bc(group, lam.clone(), &cfg).unwrap();
            lazy.expand_all().unwrap();
            assert_eq!(lazy.total(), Rational::from(1));
            let row = kernel_bc_step(group, &lam, &cfg).unwrap();
            let nonzero = row.iter().filter(|(_, m)| !m.is_zero()).count();
            assert_eq!(lazy.entries().count(), nonzero, "{group:?}");
            for (mu, mass) in lazy.entries() {
                let full = row.get(mu).unwrap().as_rational().unwrap();
                assert_eq!(mass, full, "{group:?} μ={mu}");
            }
        }
    }

    #[test]
    fn lazy_type_a_matches_the_full_row() {
        let cfg = cfg_half();
        let lam = sig(&[2, 1, 0, -1]);
        for sign in [1i8, -1] {
            let mut lazy = LazyStepSampler::type_a(lam.clone(), sign, &cfg).unwrap();
            lazy.expand_all().unwrap();
            assert_eq!(lazy.total(), Rational::from(1), "sign={sign}");
            let row = kernel_a_step(&lam, sign, &cfg).unwrap();
            assert_eq!(lazy.entries().count(), row.len(), "sign={sign}");
            for (mu, mass) in lazy.entries() {
                let full = row.get(mu).unwrap().as_rational().unwrap();
                assert_eq!(mass, full, "sign={sign} μ={mu}");
            }
        }
    }

    #[test]
    fn lazy_sampler_agrees_with_direct_inverse_cdf() {
        // the lazy sampler must realize the same distribution as exact
        // inverse-CDF over its own (shell-ordered) entries
        let cfg = cfg_half();
        let lam = nsig(&[2, 1, 0]);
        let mut lazy = LazyStepSampler::bc(GroupType::C, lam.clone(), &cfg).unwrap();
        let mut reference = LazyStepSampler::bc(GroupType::C, lam, &cfg).unwrap();
        reference.expand_all().unwrap();
        let mut rng = chain_rng(11, 0);
        for _ in 0..200 {
            let draw = rng.next_u64();
            let a = lazy.sample(draw).unwrap().clone();
            let b = reference.sample(draw).unwrap().clone();
            assert_eq!(a, b);
        }
        // early draws should not have forced full expansion
        assert!(lazy.shells_expanded() <= reference.shells_expanded());
    }

    #[test]
    fn lazy_sampler_first_shell_is_the_anchor() {
        let cfg = cfg_half();
        let lam = nsig(&[4, 3, 2, 1, 0]);
        let mut lazy = LazyStepSampler::bc(GroupType::C, lam, &cfg).unwrap();
        lazy.expand_shell().unwrap();
        assert_eq!(
            lazy.entries().count(),
            1,
            "the zero-deviation shell is the anchor alone"
        );
        let (anchor, anchor_mass) = lazy.entries().next().unwrap().clone();
        assert_eq!(anchor, sig(&[3, 2, 1, 0]));
        // the anchor is the strict mode of the full row
        let mut rest = lazy;
        rest.expand_all().unwrap();
        for (mu, mass) in rest.entries() {
            if *mu != anchor {
                assert!(*mass < anchor_mass, "μ={mu} outweighs the anchor");
            }
        }
        assert!(anchor_mass.to_f64() > 0.4);
    }
}
