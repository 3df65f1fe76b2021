use std::fmt;
use std::str::FromStr;

use super::QuantumDesign;
use crate::error::{input, Error, Result};
use crate::quantum::bloch_to_state;

/// Qubit designs built from polyhedron vertices on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BuiltinDesign {
    /// Pauli eigenstates, `K = 6`, strength 3.
    Octahedron,
    /// `K = 12`, strength 5.
    Icosahedron,
    /// Icosahedron edge midpoints, `K = 30`, strength 5.
    Icosidodecahedron,
}

impl BuiltinDesign {
    pub const ALL: [BuiltinDesign; 3] = [Self::Octahedron, Self::Icosahedron, Self::Icosidodecahedron];

    pub fn name(self) -> &'static str {
        match self {
            Self::Octahedron => "octahedron",
            Self::Icosahedron => "icosahedron",
            Self::Icosidodecahedron => "icosidodecahedron",
        }
    }

    pub fn strength(self) -> usize {
        match self {
            Self::Octahedron => 3,
            Self::Icosahedron | Self::Icosidodecahedron => 5,
        }
    }

    /// Unit Bloch vectors of the vertices, in design order.
    pub fn bloch_vectors(self) -> Vec<[f64; 3]> {
        match self {
            Self::Octahedron => vec![
                [1.0, 0.0, 0.0],
                [-1.0, 0.0, 0.0],
                [0.0, 1.0, 0.0],
                [0.0, -1.0, 0.0],
                [0.0, 0.0, 1.0],
                [0.0, 0.0, -1.0],
            ],
            Self::Icosahedron => icosahedron(),
            Self::Icosidodecahedron => icosidodecahedron(),
        }
    }
}

impl fmt::Display for BuiltinDesign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.name())
    }
}

impl FromStr for BuiltinDesign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "octahedron" => Ok(Self::Octahedron),
            "icosahedron" => Ok(Self::Icosahedron),
            "icosidodecahedron" => Ok(Self::Icosidodecahedron),
            other => input(format!("unknown built-in design '{other}'")),
        }
    }
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.map(|x| x / n)
}

// cyclic permutations of (0, ±1, ±φ)
fn icosahedron() -> Vec<[f64; 3]> {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut out = Vec::with_capacity(12);
    for shift in 0..3 {
        for s1 in [1.0, -1.0] {
            for s2 in [1.0, -1.0] {
                let mut v = [0.0, s1, s2 * phi];
                v.rotate_right(shift);
                out.push(normalize(v));
            }
        }
    }
    out
}

fn icosidodecahedron() -> Vec<[f64; 3]> {
    let verts = icosahedron();
    let dot = |a: &[f64; 3], b: &[f64; 3]| a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>();
    // nearest neighbours share an edge
    let edge_dot = (1..verts.len()).map(|k| dot(&verts[0], &verts[k])).fold(f64::MIN, f64::max);
    let mut out = Vec::with_capacity(30);
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if (dot(&verts[i], &verts[j]) - edge_dot).abs() < 1e-9 {
                let mid = [0, 1, 2].map(|c| verts[i][c] + verts[j][c]);
                out.push(normalize(mid));
            }
        }
    }
    out
}

pub fn builtin_design(which: BuiltinDesign) -> QuantumDesign {
    let vectors = which
        .bloch_vectors()
        .into_iter()
        .map(|b| bloch_to_state(b).expect("built-in Bloch vectors are unit"))
        .collect();
    QuantumDesign::new(2, which.strength(), vectors).expect("built-in design is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{verify_design, VerifyMethod};
    use crate::quantum::{bloch_to_state, DensityMatrix};

    #[test]
    fn sizes_and_strengths() {
        let expected = [
            (BuiltinDesign::Octahedron, 6, 3),
            (BuiltinDesign::Icosahedron, 12, 5),
            (BuiltinDesign::Icosidodecahedron, 30, 5),
        ];
        for (b, k, t) in expected {
            let d = builtin_design(b);
            assert_eq!(d.len(), k);
            assert_eq!(d.strength(), t);
            assert_eq!(d.dimension(), 2);
            for method in [VerifyMethod::Frame, VerifyMethod::Operator] {
                let r = verify_design(&d, t, 1e-10, method).unwrap();
                assert!(r.passes, "{b} {method}: {:?}", r.residuals);
            }
        }
    }

    #[test]
    fn octahedron_vectors_are_pauli_eigenstates() {
        let d = builtin_design(BuiltinDesign::Octahedron);
        let paulis = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
        for (k, v) in d.vectors().iter().enumerate() {
            let axis = paulis[k / 2];
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            // ⟨v|σ_axis|v⟩ = ±1 identifies an eigenvector
            let plus = bloch_to_state(axis).unwrap();
            let p = DensityMatrix::from_pure(v).expectation(&plus);
            assert!((2.0 * p - 1.0 - sign).abs() < 1e-14);
        }
    }

    #[test]
    fn parse_names() {
        for b in BuiltinDesign::ALL {
            assert_eq!(b.name().parse::<BuiltinDesign>().unwrap(), b);
        }
        assert!("cube".parse::<BuiltinDesign>().is_err());
    }

    #[test]
    fn icosidodecahedron_vertices_are_distinct() {
        let v = BuiltinDesign::Icosidodecahedron.bloch_vectors();
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                let dist: f64 = v[i].iter().zip(&v[j]).map(|(a, b)| (a - b).powi(2)).sum();
                assert!(dist > 1e-3);
            }
        }
    }
}
