use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gyro::Sampled;

/// How a verification sweep draws its inputs. Finite carriers ignore both
/// fields and are swept exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub samples: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self { samples: 10_000, seed: 0 }
    }
}

impl SampleSpec {
    pub fn new(samples: usize, seed: u64) -> Self {
        Self { samples, seed }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }
}

/// Calls `f` on every `arity`-tuple of a finite carrier, or on the stress
/// tuples followed by `spec.samples` seeded random tuples otherwise.
/// Returns the number of tuples visited.
pub fn for_each_tuple<G, F>(model: &G, spec: SampleSpec, arity: usize, mut f: F) -> usize
where
    G: Sampled,
    F: FnMut(&[G::Elem]),
{
    if let Some(all) = model.elements() {
        let n = all.len();
        if n == 0 {
            return 0;
        }
        let mut idx = vec![0usize; arity];
        let mut buf: Vec<G::Elem> = idx.iter().map(|&i| all[i].clone()).collect();
        let mut count = 0;
        loop {
            f(&buf);
            count += 1;
            // odometer
            let mut k = arity;
            loop {
                if k == 0 {
                    return count;
                }
                k -= 1;
                idx[k] += 1;
                if idx[k] < n {
                    buf[k] = all[idx[k]].clone();
                    break;
                }
                idx[k] = 0;
                buf[k] = all[0].clone();
            }
        }
    }

    let mut rng = spec.rng();
    let stress = model.stress_elements();
    let mut count = 0;
    let mut buf: Vec<G::Elem> = Vec::with_capacity(arity);
    if arity == 1 {
        for s in &stress {
            f(std::slice::from_ref(s));
            count += 1;
        }
    } else if arity > 1 {
        for s1 in &stress {
            for s2 in &stress {
                buf.clear();
                buf.push(s1.clone());
                buf.push(s2.clone());
                while buf.len() < arity {
                    buf.push(model.random_element(&mut rng));
                }
                f(&buf);
                count += 1;
            }
        }
    }
    for _ in 0..spec.samples {
        buf.clear();
        for _ in 0..arity {
            buf.push(model.random_element(&mut rng));
        }
        f(&buf);
        count += 1;
    }
    count
}
