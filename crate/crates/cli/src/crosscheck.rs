//! Random agreement runs between the decision procedure and the exhaustive
//! oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use addlin_core::addcode::AdditiveCode;
use addlin_core::equiv::{self, OracleLimits};
use addlin_core::field::FieldSpec;
use addlin_core::random;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    RankOneBlock,
    LinearImage,
    Generic,
}

#[derive(Clone, Debug, Serialize)]
pub struct Instance {
    pub family: Family,
    pub n: usize,
    pub k: usize,
    pub verdict: &'static str,
    pub oracle: bool,
    pub witness_ok: Option<bool>,
}

impl Instance {
    pub fn agrees(&self) -> bool {
        self.verdict_is_equivalent() == self.oracle && self.witness_ok != Some(false)
    }

    fn verdict_is_equivalent(&self) -> bool {
        self.verdict == "equivalent"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Summary {
    pub seed: u64,
    pub total: usize,
    pub agreements: usize,
    pub equivalent: usize,
    pub strictly_additive: usize,
    pub by_family: Vec<(Family, usize)>,
    pub disagreements: Vec<Instance>,
}

/// A random `F_4` code with `2 ≤ n ≤ max_n`, `2 ≤ k ≤ max_k`, cycling
/// through the three families.
pub fn instance(rng: &mut ChaCha8Rng, family: Family, max_n: usize, max_k: usize) -> AdditiveCode {
    let spec = FieldSpec::quaternary();
    let n = rng.random_range(2..=max_n);
    let k = rng.random_range(2..=max_k.min(2 * n));
    match family {
        Family::RankOneBlock => {
            let k = k.min(2 * n - 1);
            let i = rng.random_range(1..=n);
            random::code_with_rank_one_block(rng, spec, n, k, i)
        }
        Family::LinearImage => {
            let m = (k / 2).max(1);
            let c = random::linear_code(rng, spec, n, m).to_additive();
            let blocks = random::gl2_blocks(rng, spec.base(), n);
            let perm = random::permutation(rng, n);
            c.transform_blocks(&blocks)
                .expect("block count matches")
                .permute(&perm)
        }
        Family::Generic => random::additive_code(rng, spec, n, k),
    }
}

pub fn run(seed: u64, count: usize, max_n: usize, max_k: usize, budget: u64) -> anyhow::Result<Summary> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families = [Family::RankOneBlock, Family::LinearImage, Family::Generic];
    let limits = OracleLimits {
        max_n: max_n.max(OracleLimits::default().max_n),
        max_k: max_k.max(OracleLimits::default().max_k),
        ..OracleLimits::default()
    };
    let mut instances = Vec::with_capacity(count);
    for i in 0..count {
        let family = families[i % families.len()];
        let code = instance(&mut rng, family, max_n, max_k);
        let verdict = equiv::test_linearity(&code, budget)?;
        let witness_ok = verdict.witness().map(|w| w.verify(&code).is_ok());
        let oracle = equiv::oracle_equivalent_to_linear(&code, limits)?;
        instances.push(Instance {
            family,
            n: code.n(),
            k: code.k(),
            verdict: verdict.tag(),
            oracle,
            witness_ok,
        });
    }
    let agreements = instances.iter().filter(|i| i.agrees()).count();
    let equivalent = instances.iter().filter(|i| i.oracle).count();
    Ok(Summary {
        seed,
        total: count,
        agreements,
        equivalent,
        strictly_additive: count - equivalent,
        by_family: families
            .iter()
            .map(|f| (*f, instances.iter().filter(|i| i.family == *f).count()))
            .collect(),
        disagreements: instances.into_iter().filter(|i| !i.agrees()).collect(),
    })
}
