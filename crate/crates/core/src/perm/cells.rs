//! Explicit cell arithmetic of `Sym(G)`. Objects are automorphisms (by
//! Aut-index); a cell `τ(g; φ, φ̃)` exists when `φ̃ = c_g ∘ φ`.

use serde::{Deserialize, Serialize};

use crate::autos::OuterStructure;
use crate::error::{Error, Result};
use crate::group::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SymCell {
    pub g: Elem,
    pub source: usize,
    pub target: usize,
}

impl SymCell {
    pub fn identity(phi: usize, e: Elem) -> Self {
        SymCell { g: e, source: phi, target: phi }
    }

    pub fn is_valid(&self, outer: &OuterStructure) -> bool {
        let aut = outer.aut();
        self.g < outer.base().order()
            && self.source < aut.order()
            && self.target == aut.mul(outer.inner_from(self.g), self.source)
    }
}

/// Build `τ(g; φ, c_g ∘ φ)`.
pub fn sym_cell(outer: &OuterStructure, g: Elem, source: usize) -> SymCell {
    SymCell { g, source, target: outer.aut().mul(outer.inner_from(g), source) }
}

fn checked(outer: &OuterStructure, c: SymCell) -> Result<SymCell> {
    if c.is_valid(outer) {
        Ok(c)
    } else {
        Err(Error::InvalidCell(format!("τ({}; {}, {}) has target ≠ c_g ∘ source", c.g, c.source, c.target)))
    }
}

/// `E(φ) ⊗ E(φ') = E(φ ∘ φ')`.
pub fn sym_object_tensor(outer: &OuterStructure, phi: usize, psi: usize) -> usize {
    outer.aut().mul(phi, psi)
}

/// `τ(g̃; φ̃, φ̃̃) ∘ τ(g; φ, φ̃) = τ(g̃ g; φ, φ̃̃)`.
pub fn sym_compose(outer: &OuterStructure, later: SymCell, earlier: SymCell) -> Result<SymCell> {
    checked(outer, later)?;
    checked(outer, earlier)?;
    if later.source != earlier.target {
        return Err(Error::InvalidCell("composed cells do not meet".into()));
    }
    let g = outer.base().mul(later.g, earlier.g);
    checked(outer, SymCell { g, source: earlier.source, target: later.target })
}

/// `τ(g; φ, φ̃) ⊗ τ(g'; φ', φ̃') = τ(g φ(g'); φ φ', φ̃ φ̃')`.
pub fn sym_tensor(outer: &OuterStructure, a: SymCell, b: SymCell) -> Result<SymCell> {
    checked(outer, a)?;
    checked(outer, b)?;
    let g = outer.base().mul(a.g, outer.aut_element(a.source).apply(b.g));
    let aut = outer.aut();
    checked(outer, SymCell { g, source: aut.mul(a.source, b.source), target: aut.mul(a.target, b.target) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autos::automorphism_group;
    use crate::group::dihedral;

    #[test]
    fn d8_tensor_example() {
        let d8 = dihedral(8).unwrap();
        let o = automorphism_group(&d8).unwrap();
        let id = o.aut().identity();
        let (r, s) = (1, 8);
        let a = sym_cell(&o, r, id);
        let b = sym_cell(&o, s, id);
        let t = sym_tensor(&o, a, b).unwrap();
        assert_eq!(t, SymCell { g: d8.mul(r, s), source: id, target: o.inner_from(d8.mul(r, s)) });
    }

    #[test]
    fn identity_cells_and_rejection() {
        let o = automorphism_group(&dihedral(4).unwrap()).unwrap();
        let e = o.base().identity();
        for phi in o.aut().elements() {
            let c = sym_cell(&o, 3, phi);
            assert_eq!(sym_compose(&o, SymCell::identity(c.target, e), c).unwrap(), c);
            assert_eq!(sym_compose(&o, c, SymCell::identity(phi, e)).unwrap(), c);
        }
        let bad = SymCell { g: 1, source: 0, target: 0 };
        assert!(matches!(sym_tensor(&o, bad, bad), Err(Error::InvalidCell(_))));
    }
}
