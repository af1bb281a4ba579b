use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::framework::ArgumentationFramework;

/// Largest framework a generator will produce.
pub const MAX_GENERATED_ARGS: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Model {
    /// Every ordered pair `(i, j)` with `i != j` is an attack with
    /// probability `p`; self-attacks only when `loops` is set.
    ErdosRenyi { n: usize, p: f64, loops: bool },
    /// `a0 -> a1 -> ... -> a(n-1)`.
    Chain { n: usize },
    /// `w * h` grid; each pair of neighbours gets one attack, the reverse
    /// attack, or both, uniformly.
    Grid { w: usize, h: usize },
    /// `k` blocks of `size` arguments. Each block is a directed cycle plus
    /// random intra-block attacks (`p_intra`); attacks between blocks only
    /// go from a lower to a higher block (`p_inter`).
    SccLadder {
        k: usize,
        size: usize,
        p_intra: f64,
        p_inter: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneratorSpec {
    pub model: Model,
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn new(model: Model, seed: u64) -> Result<Self> {
        let spec = GeneratorSpec { model, seed };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_seed(self, seed: u64) -> Self {
        GeneratorSpec { seed, ..self }
    }

    pub fn num_args(&self) -> usize {
        match self.model {
            Model::ErdosRenyi { n, .. } | Model::Chain { n } => n,
            Model::Grid { w, h } => w.saturating_mul(h),
            Model::SccLadder { k, size, .. } => k.saturating_mul(size),
        }
    }

    fn validate(&self) -> Result<()> {
        let prob = |name: &str, p: f64| {
            if (0.0..=1.0).contains(&p) {
                Ok(())
            } else {
                Err(Error::InvalidSpec(format!("{name}={p} is not in [0, 1]")))
            }
        };
        match self.model {
            Model::ErdosRenyi { p, .. } => prob("p", p)?,
            Model::SccLadder {
                k,
                size,
                p_intra,
                p_inter,
            } => {
                if k == 0 || size == 0 {
                    return Err(Error::InvalidSpec("k and size must be positive".into()));
                }
                prob("pin", p_intra)?;
                prob("pout", p_inter)?;
            }
            Model::Chain { .. } | Model::Grid { .. } => {}
        }
        if self.num_args() > MAX_GENERATED_ARGS {
            return Err(Error::InvalidSpec(format!(
                "{} arguments requested, at most {MAX_GENERATED_ARGS} supported",
                self.num_args()
            )));
        }
        Ok(())
    }

    /// Comma-free identifier, usable as a CSV field or file stem.
    pub fn instance_id(&self) -> String {
        self.to_string().replace([':', ','], "-").replace('=', "")
    }

    pub fn generate(&self) -> ArgumentationFramework {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let mut attacks = Vec::new();
        let n = self.num_args();
        match self.model {
            Model::ErdosRenyi { n, p, loops } => {
                for i in 0..n {
                    for j in 0..n {
                        if (i != j || loops) && rng.random_bool(p) {
                            attacks.push((i, j));
                        }
                    }
                }
            }
            Model::Chain { n } => attacks.extend((1..n).map(|i| (i - 1, i))),
            Model::Grid { w, h } => {
                let mut link =
                    |a: usize, b: usize, rng: &mut ChaCha8Rng| match rng.random_range(0..3) {
                        0 => attacks.push((a, b)),
                        1 => attacks.push((b, a)),
                        _ => attacks.extend([(a, b), (b, a)]),
                    };
                for y in 0..h {
                    for x in 0..w {
                        let a = y * w + x;
                        if x + 1 < w {
                            link(a, a + 1, &mut rng);
                        }
                        if y + 1 < h {
                            link(a, a + w, &mut rng);
                        }
                    }
                }
            }
            Model::SccLadder {
                k,
                size,
                p_intra,
                p_inter,
            } => {
                for b in 0..k {
                    let base = b * size;
                    if size > 1 {
                        attacks.extend((0..size).map(|i| (base + i, base + (i + 1) % size)));
                    }
                    for i in 0..size {
                        for j in 0..size {
                            if rng.random_bool(p_intra) {
                                attacks.push((base + i, base + j));
                            }
                        }
                    }
                    for from in base..base + size {
                        for to in base + size..n {
                            if rng.random_bool(p_inter) {
                                attacks.push((from, to));
                            }
                        }
                    }
                }
            }
        }
        ArgumentationFramework::from_index_pairs(n, attacks)
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.model {
            Model::ErdosRenyi { n, p, loops } => {
                write!(f, "er:n={n},p={p}")?;
                if loops {
                    f.write_str(",loops=1")?;
                }
            }
            Model::Chain { n } => write!(f, "chain:n={n}")?,
            Model::Grid { w, h } => write!(f, "grid:w={w},h={h}")?,
            Model::SccLadder {
                k,
                size,
                p_intra,
                p_inter,
            } => write!(f, "ladder:k={k},size={size},pin={p_intra},pout={p_inter}")?,
        }
        write!(f, ",seed={}", self.seed)
    }
}

struct Params<'a> {
    pairs: Vec<(&'a str, &'a str)>,
}

impl<'a> Params<'a> {
    fn parse(text: &'a str) -> Result<Self> {
        let mut pairs = Vec::new();
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::InvalidSpec(format!("`{item}` is not key=value")))?;
            let key = key.trim();
            if pairs.iter().any(|&(k, _)| k == key) {
                return Err(Error::InvalidSpec(format!("`{key}` given twice")));
            }
            pairs.push((key, value.trim()));
        }
        Ok(Params { pairs })
    }

    fn take<T: FromStr>(&mut self, key: &str, default: Option<T>) -> Result<T> {
        match self.pairs.iter().position(|&(k, _)| k == key) {
            Some(i) => {
                let (_, value) = self.pairs.remove(i);
                value
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("bad value `{value}` for `{key}`")))
            }
            None => default.ok_or_else(|| Error::InvalidSpec(format!("missing `{key}`"))),
        }
    }

    fn finish(self) -> Result<()> {
        match self.pairs.first() {
            Some((k, _)) => Err(Error::InvalidSpec(format!("unknown parameter `{k}`"))),
            None => Ok(()),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// `er:n=50,p=0.05,seed=7`, `chain:n=3`, `grid:w=4,h=5,seed=1`,
    /// `ladder:k=3,size=4,pin=0.5,pout=0.2,seed=9`. The seed defaults to 0.
    fn from_str(s: &str) -> Result<Self> {
        let (model, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params = Params::parse(rest)?;
        let model = match model.trim().to_ascii_lowercase().as_str() {
            "er" => Model::ErdosRenyi {
                n: params.take("n", None)?,
                p: params.take("p", None)?,
                loops: params.take::<u8>("loops", Some(0))? != 0,
            },
            "chain" => Model::Chain {
                n: params.take("n", None)?,
            },
            "grid" => Model::Grid {
                w: params.take("w", None)?,
                h: params.take("h", None)?,
            },
            "ladder" => Model::SccLadder {
                k: params.take("k", None)?,
                size: params.take("size", None)?,
                p_intra: params.take("pin", None)?,
                p_inter: params.take("pout", None)?,
            },
            other => return Err(Error::InvalidSpec(format!("unknown model `{other}`"))),
        };
        let seed = params.take("seed", Some(0))?;
        params.finish()?;
        GeneratorSpec::new(model, seed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encodings::emit_apx_facts;
    use petgraph::algo::tarjan_scc;
    use petgraph::graph::DiGraph;
    use proptest::prelude::*;

    fn scc_count(af: &ArgumentationFramework) -> usize {
        let mut g = DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..af.len()).map(|_| g.add_node(())).collect();
        for &(a, b) in af.attacks() {
            g.add_edge(nodes[a], nodes[b], ());
        }
        tarjan_scc(&g).len()
    }

    #[test]
    fn chain_of_three() {
        let af: ArgumentationFramework = "chain:n=3".parse::<GeneratorSpec>().unwrap().generate();
        assert_eq!(af.len(), 3);
        assert_eq!(af.attacks(), &[(0, 1), (1, 2)]);
    }

    #[test]
    fn er_with_zero_probability() {
        for seed in 0..5 {
            let spec: GeneratorSpec = format!("er:n=5,p=0.0,seed={seed}").parse().unwrap();
            let af = spec.generate();
            assert_eq!((af.len(), af.num_attacks()), (5, 0));
        }
    }

    #[test]
    fn ladder_has_k_components() {
        for seed in 0..20 {
            let spec: GeneratorSpec = format!("ladder:k=3,size=4,pin=0.5,pout=0.2,seed={seed}")
                .parse()
                .unwrap();
            assert_eq!(scc_count(&spec.generate()), 3, "seed {seed}");
        }
    }

    #[test]
    fn grid_shape() {
        let af = "grid:w=3,h=2,seed=4"
            .parse::<GeneratorSpec>()
            .unwrap()
            .generate();
        assert_eq!(af.len(), 6);
        // 7 neighbouring pairs, each with one or two attacks.
        assert!((7..=14).contains(&af.num_attacks()));
    }

    #[test]
    fn display_round_trips() {
        for s in [
            "er:n=50,p=0.05,seed=7",
            "er:n=4,p=0.5,loops=1,seed=0",
            "chain:n=3,seed=0",
            "grid:w=4,h=5,seed=1",
            "ladder:k=3,size=4,pin=0.5,pout=0.2,seed=9",
        ] {
            let spec: GeneratorSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert!(!spec.instance_id().contains(','));
        }
    }

    #[test]
    fn invalid_specs() {
        for s in [
            "er:n=5",
            "er:n=5,p=1.5",
            "er:n=5,p=0.1,q=2",
            "er:n=5,p=0.1,n=6",
            "tree:n=3",
            "chain:n=x",
            "ladder:k=0,size=3,pin=0.1,pout=0.1",
            "er:n=100000,p=0.1",
        ] {
            assert!(
                matches!(s.parse::<GeneratorSpec>(), Err(Error::InvalidSpec(_))),
                "{s}"
            );
        }
    }

    proptest! {
        #[test]
        fn generation_is_deterministic(n in 0usize..30, p in 0.0f64..1.0, seed: u64) {
            let spec = GeneratorSpec::new(Model::ErdosRenyi { n, p, loops: true }, seed).unwrap();
            prop_assert_eq!(
                emit_apx_facts(&spec.generate()).unwrap(),
                emit_apx_facts(&spec.generate()).unwrap()
            );
        }

        #[test]
        fn ladder_blocks_are_strongly_connected(k in 1usize..5, size in 1usize..5, seed: u64) {
            let spec = GeneratorSpec::new(
                Model::SccLadder { k, size, p_intra: 0.3, p_inter: 0.3 },
                seed,
            ).unwrap();
            prop_assert_eq!(scc_count(&spec.generate()), k);
        }
    }
}
