use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::SimplicialComplex;
use crate::gf2::BitVector;
use crate::homology::HomologyBasis;

use super::{CupError, FaceTable};

/// Physical CCZ gates, one qubit index per code copy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CczCircuit {
    pub degrees: [usize; 3],
    /// Number of qubits in each copy.
    pub sizes: [usize; 3],
    pub triples: Vec<[u32; 3]>,
    /// Triples generated before cancelling repeats.
    pub candidates: usize,
}

/// One candidate gate per top simplex on its front, middle and back faces;
/// triples occurring an even number of times cancel.
pub fn synthesize_circuit(sc: &SimplicialComplex, q1: usize, q2: usize, q3: usize) -> Result<CczCircuit, CupError> {
    let table = FaceTable::new(sc, &[q1, q2, q3])?;
    let mut triples: Vec<[u32; 3]> = (0..table.len())
        .map(|t| [0, 1, 2].map(|k| table.face(k, t) as u32))
        .collect();
    let candidates = triples.len();
    triples.sort_unstable();
    let mut kept = Vec::with_capacity(triples.len());
    let mut i = 0;
    while i < triples.len() {
        let mut j = i;
        while j < triples.len() && triples[j] == triples[i] {
            j += 1;
        }
        if (j - i) % 2 == 1 {
            kept.push(triples[i]);
        }
        i = j;
    }
    Ok(CczCircuit {
        degrees: [q1, q2, q3],
        sizes: [sc.count(q1), sc.count(q2), sc.count(q3)],
        triples: kept,
        candidates,
    })
}

impl CczCircuit {
    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// Phase exponent on the computational basis state `|x_1, x_2, x_3⟩`:
    /// the number of gates whose three qubits are all set, mod 2.
    pub fn phase(&self, x: [&BitVector; 3]) -> bool {
        self.triples
            .iter()
            .filter(|t| x[0].get(t[0] as usize) && x[1].get(t[1] as usize) && x[2].get(t[2] as usize))
            .count()
            % 2
            == 1
    }

    /// Largest number of gates acting on any single qubit.
    pub fn max_overlap(&self) -> usize {
        (0..3)
            .map(|k| {
                let mut c = vec![0usize; self.sizes[k]];
                for t in &self.triples {
                    c[t[k] as usize] += 1;
                }
                c.into_iter().max().unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Text form: a `# degrees q1 q2 q3 sizes n1 n2 n3` line, then `CCZ i j k` per gate.
    pub fn write(&self) -> String {
        let [a, b, c] = self.degrees;
        let [x, y, z] = self.sizes;
        let mut out = format!("# degrees {a} {b} {c} sizes {x} {y} {z}\n");
        for t in &self.triples {
            out.push_str(&format!("CCZ {} {} {}\n", t[0], t[1], t[2]));
        }
        out
    }

    pub fn read(text: &str) -> Result<CczCircuit, CupError> {
        let mut degrees = [0; 3];
        let mut sizes = [0; 3];
        let mut triples = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let bad = |m: &str| CupError::Parse {
                line: lineno + 1,
                message: m.into(),
            };
            let tok: Vec<&str> = line.split_whitespace().collect();
            match tok.as_slice() {
                [] => {}
                ["#", "degrees", d0, d1, d2, "sizes", s0, s1, s2] => {
                    let p = |t: &str| t.parse::<usize>().map_err(|_| bad("bad header"));
                    degrees = [p(d0)?, p(d1)?, p(d2)?];
                    sizes = [p(s0)?, p(s1)?, p(s2)?];
                }
                ["CCZ", i, j, k] => {
                    let p = |t: &str| t.parse::<u32>().map_err(|_| bad("bad qubit index"));
                    triples.push([p(i)?, p(j)?, p(k)?]);
                }
                [first, ..] if first.starts_with('#') => {}
                _ => return Err(bad("expected `CCZ i j k`")),
            }
        }
        for k in 0..3 {
            let max = triples.iter().map(|t| t[k] as usize + 1).max().unwrap_or(0);
            sizes[k] = sizes[k].max(max);
        }
        let candidates = triples.len();
        Ok(CczCircuit {
            degrees,
            sizes,
            triples,
            candidates,
        })
    }
}

/// Nonzero entries of the trilinear form on cohomology bases.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LogicalCczTensor {
    pub dims: [usize; 3],
    pub entries: BTreeSet<(usize, usize, usize)>,
}

impl LogicalCczTensor {
    pub fn support(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, a: usize, b: usize, c: usize) -> bool {
        self.entries.contains(&(a, b, c))
    }
}

fn check_bases(sizes: [usize; 3], degrees: [usize; 3], bases: [&HomologyBasis; 3]) -> Result<(), CupError> {
    for k in 0..3 {
        if bases[k].degree != degrees[k] {
            return Err(CupError::BasisMismatch(format!(
                "copy {k}: basis degree {} vs circuit degree {}",
                bases[k].degree, degrees[k]
            )));
        }
        if let Some(z) = bases[k].cocycles.iter().find(|z| z.len() != sizes[k]) {
            return Err(CupError::BasisMismatch(format!(
                "copy {k}: cocycle length {} vs {} qubits",
                z.len(),
                sizes[k]
            )));
        }
    }
    Ok(())
}

/// Entry (a, b, c) = Σ over gates (i, j, k) of `α_a[i] β_b[j] γ_c[k]`.
pub fn logical_action(circuit: &CczCircuit, bases: [&HomologyBasis; 3]) -> Result<LogicalCczTensor, CupError> {
    check_bases(circuit.sizes, circuit.degrees, bases)?;
    let dims = bases.map(HomologyBasis::len);
    let mut entries = BTreeSet::new();
    for (a, x) in bases[0].cocycles.iter().enumerate() {
        let gates: Vec<&[u32; 3]> = circuit.triples.iter().filter(|t| x.get(t[0] as usize)).collect();
        for (b, y) in bases[1].cocycles.iter().enumerate() {
            let mut w = BitVector::zeros(circuit.sizes[2]);
            for t in gates.iter().filter(|t| y.get(t[1] as usize)) {
                w.flip(t[2] as usize);
            }
            for (c, z) in bases[2].cocycles.iter().enumerate() {
                if w.dot(z) {
                    entries.insert((a, b, c));
                }
            }
        }
    }
    Ok(LogicalCczTensor { dims, entries })
}

/// The same tensor computed directly as triple cup sums over the top simplices,
/// without going through a circuit.
pub fn cup_sum_tensor(sc: &SimplicialComplex, bases: [&HomologyBasis; 3]) -> Result<LogicalCczTensor, CupError> {
    let degrees = bases.map(|b| b.degree);
    check_bases(degrees.map(|d| sc.count(d)), degrees, bases)?;
    let table = FaceTable::new(sc, &degrees)?;
    let mut entries = BTreeSet::new();
    for (a, x) in bases[0].cocycles.iter().enumerate() {
        for (b, y) in bases[1].cocycles.iter().enumerate() {
            let w = table.contract(&[x, y]);
            for (c, z) in bases[2].cocycles.iter().enumerate() {
                if w.dot(z) {
                    entries.insert((a, b, c));
                }
            }
        }
    }
    Ok(LogicalCczTensor {
        dims: bases.map(HomologyBasis::len),
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhaseReport {
    pub trials: usize,
    pub passes: usize,
    pub failures: usize,
    pub seed: u64,
}

impl PhaseReport {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

fn random_combination(basis: &HomologyBasis, len: usize, rng: &mut ChaCha8Rng) -> BitVector {
    let mut v = BitVector::zeros(len);
    for z in &basis.cocycles {
        if rng.gen::<bool>() {
            v.xor_with(z);
        }
    }
    v
}

/// For each trial draws cocycles `η_k` from the bases and coboundaries `ξ_k = dζ_k`
/// on `sc`, and checks that the circuit phase at `η + ξ` equals the phase at `η`.
/// Trial `t` uses stream `t` of a ChaCha8 generator seeded with `seed`.
pub fn phase_polynomial_check(
    sc: &SimplicialComplex,
    circuit: &CczCircuit,
    bases: [&HomologyBasis; 3],
    trials: usize,
    seed: u64,
) -> Result<PhaseReport, CupError> {
    check_bases(circuit.sizes, circuit.degrees, bases)?;
    let boundaries: Vec<_> = circuit.degrees.iter().map(|&q| (q > 0).then(|| sc.boundary(q))).collect();
    let mut passes = 0;
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(trial as u64);
        let eta: Vec<BitVector> = (0..3).map(|k| random_combination(bases[k], circuit.sizes[k], &mut rng)).collect();
        let shifted: Vec<BitVector> = (0..3)
            .map(|k| match &boundaries[k] {
                Some(d) => {
                    let zeta = BitVector::random(d.rows(), &mut rng);
                    &eta[k] ^ &d.transpose_mul_vec(&zeta)
                }
                None => eta[k].clone(),
            })
            .collect();
        let before = circuit.phase([&eta[0], &eta[1], &eta[2]]);
        let after = circuit.phase([&shifted[0], &shifted[1], &shifted[2]]);
        if before == after {
            passes += 1;
        }
    }
    Ok(PhaseReport {
        trials,
        passes,
        failures: trials - passes,
        seed,
    })
}
