//! Small fixed categories used as models.

use super::category::{CategoryBuilder, FiniteCategory, MorphId};

/// One object, one identity.
pub fn terminal() -> FiniteCategory {
    let mut b = CategoryBuilder::new("terminal", 1);
    let i = b.morphism("1", 0, 0).unwrap();
    b.identity(0, i).unwrap();
    b.build().unwrap()
}

/// `A → B` with one non-identity morphism.
pub fn arrow() -> FiniteCategory {
    let mut b = CategoryBuilder::new("arrow", 2);
    let i0 = b.morphism("1A", 0, 0).unwrap();
    b.morphism("f", 0, 1).unwrap();
    let i1 = b.morphism("1B", 1, 1).unwrap();
    b.identity(0, i0).unwrap();
    b.identity(1, i1).unwrap();
    b.build().unwrap()
}

/// Two parallel morphisms `f, g: A → B`.
pub fn parallel() -> FiniteCategory {
    let mut b = CategoryBuilder::new("parallel", 2);
    let i0 = b.morphism("1A", 0, 0).unwrap();
    b.morphism("f", 0, 1).unwrap();
    b.morphism("g", 0, 1).unwrap();
    let i1 = b.morphism("1B", 1, 1).unwrap();
    b.identity(0, i0).unwrap();
    b.identity(1, i1).unwrap();
    b.build().unwrap()
}

/// The left-zero band `{1, a, b}` as a one-object category: `x ∘ y = x`
/// for `x, y ∈ {a, b}`.
pub fn monoid3() -> FiniteCategory {
    let mut b = CategoryBuilder::new("monoid3", 1);
    let one = b.morphism("1", 0, 0).unwrap();
    let xa = b.morphism("a", 0, 0).unwrap();
    let xb = b.morphism("b", 0, 0).unwrap();
    b.identity(0, one).unwrap();
    for x in [xa, xb] {
        for y in [xa, xb] {
            b.compose(x, x, y).unwrap();
        }
    }
    b.build().unwrap()
}

/// The diamond poset `0 ≤ 1, 2 ≤ 3`.
pub fn diamond() -> FiniteCategory {
    let le = |x: u32, y: u32| x == y || x == 0 || y == 3;
    let mut b = CategoryBuilder::new("diamond", 4);
    let mut ids = [[MorphId::MAX; 4]; 4];
    for x in 0..4 {
        for y in 0..4 {
            if le(x, y) {
                ids[x as usize][y as usize] = b.morphism(format!("{x}<={y}"), x, y).unwrap();
            }
        }
    }
    for x in 0..4 {
        b.identity(x as u32, ids[x][x]).unwrap();
        for y in 0..4 {
            for z in 0..4 {
                if ids[x][y] != MorphId::MAX && ids[y][z] != MorphId::MAX {
                    b.compose(ids[x][z], ids[y][z], ids[x][y]).unwrap();
                }
            }
        }
    }
    b.build().unwrap()
}

/// A `rows × cols` matrix over F2, entry `(r, c)` at bit `r * cols + c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Matrix {
    rows: u32,
    cols: u32,
    bits: u32,
}

impl Matrix {
    fn get(&self, r: u32, c: u32) -> bool {
        self.bits >> (r * self.cols + c) & 1 == 1
    }

    /// `self · other`
    fn mul(&self, other: &Matrix) -> Matrix {
        let mut bits = 0;
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut x = false;
                for k in 0..self.cols {
                    x ^= self.get(r, k) && other.get(k, c);
                }
                if x {
                    bits |= 1 << (r * other.cols + c);
                }
            }
        }
        Matrix {
            rows: self.rows,
            cols: other.cols,
            bits,
        }
    }

    fn name(&self) -> String {
        if self.rows == 0 || self.cols == 0 {
            return "0".to_string();
        }
        let rows: Vec<String> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect())
            .collect();
        format!("[{}]", rows.join(";"))
    }
}

/// Skeleton of F2-vector spaces of dimension at most 2; a morphism
/// `i → j` is a `j × i` matrix and composition is the matrix product.
pub fn linear_f2() -> FiniteCategory {
    let mut b = CategoryBuilder::new("linear-f2", 3);
    let mut mats: Vec<Matrix> = Vec::new();
    for i in 0..3u32 {
        for j in 0..3u32 {
            for bits in 0..1u32 << (i * j) {
                let m = Matrix { rows: j, cols: i, bits };
                b.morphism(m.name(), i, j).unwrap();
                mats.push(m);
            }
        }
    }
    let id_bits = [0, 1, 0b1001];
    for d in 0..3u32 {
        let f = mats
            .iter()
            .position(|m| m.rows == d && m.cols == d && m.bits == id_bits[d as usize])
            .unwrap();
        b.identity(d, f as MorphId).unwrap();
    }
    let find = |m: &Matrix| mats.iter().position(|x| x == m).unwrap() as MorphId;
    for (fi, f) in mats.iter().enumerate() {
        for (gi, g) in mats.iter().enumerate() {
            if g.cols == f.rows {
                b.compose(find(&g.mul(f)), gi as MorphId, fi as MorphId).unwrap();
            }
        }
    }
    b.build().unwrap()
}

/// Every shipped sample, smallest first.
pub fn all() -> Vec<FiniteCategory> {
    vec![terminal(), arrow(), parallel(), monoid3(), diamond(), linear_f2()]
}

pub fn by_name(name: &str) -> Option<FiniteCategory> {
    all().into_iter().find(|c| c.name() == name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_laws_and_shapes() {
        for c in all() {
            c.check_laws().unwrap();
        }
        assert!(diamond().is_thin());
        assert_eq!(diamond().morphism_count(), 9);
        assert_eq!(monoid3().object_count(), 1);
        let l = linear_f2();
        assert_eq!(l.hom(1, 1).len(), 2);
        assert_eq!(l.hom(2, 2).len(), 16);
        assert_eq!(l.morphism_count(), 31);
        assert!(!parallel().is_thin());
    }

    #[test]
    fn matrix_names() {
        let l = linear_f2();
        assert_eq!(l.morphism_name(l.identity(2)), "[10;01]");
        assert_eq!(l.morphism_name(l.identity(0)), "0");
        let swap = l.find("[01;10]", 2, 2).unwrap();
        assert_eq!(l.compose(swap, swap), Some(l.identity(2)));
    }
}
