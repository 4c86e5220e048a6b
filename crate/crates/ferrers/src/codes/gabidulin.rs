use super::MatrixCode;
use crate::diagram::families;
use crate::gf::{ExtensionField, Field, Matrix};
use crate::{Error, Result};

/// Gabidulin `[m x n, max(m,n)(min(m,n) - d + 1), d]` MRD code over `GF(q)`.
///
/// With `N = max(m, n)` and `l = min(m, n)`, codewords are the evaluations
/// of `f(x) = sum_{i < l-d+1} a_i x^{q^i}`, `a_i` in `GF(q^N)`, at
/// `1, w, ..., w^{l-1}` (`w` a root of the extension modulus), expanded
/// column-wise into `N x l` matrices and transposed when `m < n`.
pub fn gabidulin_mrd(m: usize, n: usize, d: usize, q: u32) -> Result<MatrixCode> {
    let (big, small) = (m.max(n), m.min(n));
    if d == 0 || d > small {
        return Err(Error::domain(format!("Gabidulin needs 1 <= d <= min(m,n), got d={d}, m={m}, n={n}")));
    }
    let base = Field::new(q)?;
    let ext = ExtensionField::new(&base, big as u32)?;
    let points: Vec<u32> = (0..small as u32).map(|j| ext.basis_element(j)).collect();
    let kappa = small - d + 1;
    let mut gens = Vec::with_capacity(big * kappa);
    for i in 0..kappa {
        for t in 0..big as u32 {
            let a = ext.basis_element(t);
            let word: Vec<u32> = points.iter().map(|&g| ext.mul(a, ext.pow(g, u64::from(q).pow(i as u32)))).collect();
            let mat: Matrix = ext.vector_to_matrix(&word);
            gens.push(if m < n { mat.transpose() } else { mat });
        }
    }
    let code = MatrixCode::new(&base, families::rectangle(m, n), m, n, &gens)?;
    if code.dim() != big * kappa {
        return Err(Error::invariant(format!("Gabidulin generators span {} < {}", code.dim(), big * kappa)));
    }
    Ok(code)
}
