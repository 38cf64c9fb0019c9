use alloc::vec;
use alloc::vec::Vec;

use num_traits::{Signed, Zero};

use super::{equivalence_budget, EquivalenceBudget, FcfError};
use crate::exactalg::{coefficient_tuples, rational_gcd, Matrix, Rational};
use crate::gridmod::{GridError, GridModule};
use crate::noise::{NoiseSize, NoiseSpec};
use crate::structure::{nat_basis, nat_combination, NatMap, NatSystem};

/// Largest number of natural transformations enumerated in one search.
pub const NAT_ENUMERATION_CAP: u64 = 1 << 16;

/// A span `F <- H -> G` whose two legs have the given budgets.
#[derive(Clone, Debug)]
pub struct ClosenessCertificate {
    pub bound: NoiseSize,
    pub h: GridModule,
    pub left: NatMap,
    pub right: NatMap,
    pub left_budget: EquivalenceBudget,
    pub right_budget: EquivalenceBudget,
}

/// An upper bound on `d(F, G)` from a finite family of spans: the zero span,
/// and `F`, `G` as apex with every natural transformation between them when
/// that space is small enough (its basis and their sum otherwise).
pub fn closeness_upper_bound(spec: &NoiseSpec, f: &GridModule, g: &GridModule) -> Result<ClosenessCertificate, FcfError> {
    let (f, g) = f.align(g)?;
    let mut best = span(spec, &GridModule::zero(f.field(), f.r(), f.alpha(), f.size()), &f, &g, None)?;
    if f == g {
        return span(spec, &f, &f, &g, Some((NatMap::identity(&f), NatMap::identity(&g))));
    }
    for (src, dst, forward) in [(&f, &g, true), (&g, &f, false)] {
        for phi in nat_maps(src, dst, NAT_ENUMERATION_CAP)? {
            let legs = if forward { (NatMap::identity(&f), phi) } else { (phi, NatMap::identity(&g)) };
            let c = span(spec, src, &f, &g, Some(legs))?;
            if c.bound < best.bound {
                best = c;
            }
        }
    }
    Ok(best)
}

fn span(
    spec: &NoiseSpec,
    h: &GridModule,
    f: &GridModule,
    g: &GridModule,
    legs: Option<(NatMap, NatMap)>,
) -> Result<ClosenessCertificate, FcfError> {
    let (left, right) = match legs {
        Some(l) => l,
        None => (NatMap::zero(h, f)?, NatMap::zero(h, g)?),
    };
    let left_budget = equivalence_budget(spec, &left)?;
    let right_budget = equivalence_budget(spec, &right)?;
    let bound = left_budget.total().plus(&right_budget.total());
    Ok(ClosenessCertificate { bound, h: h.clone(), left, right, left_budget, right_budget })
}

/// Every natural transformation when there are at most `cap`; otherwise the
/// basis and its sum.
fn nat_maps(src: &GridModule, dst: &GridModule, cap: u64) -> Result<Vec<NatMap>, FcfError> {
    let basis = nat_basis(src, dst)?;
    match coefficient_tuples(src.field(), basis.len(), cap) {
        Some(tuples) => Ok(tuples.iter().map(|c| nat_combination(&basis, c, src, dst)).collect()),
        None => {
            let ones = vec![1; basis.len()];
            let sum = nat_combination(&basis, &ones, src, dst);
            let mut out = basis;
            out.push(sum);
            Ok(out)
        }
    }
}

/// Whether `F` and `G` are `tau`-interleaved. Transformations
/// `phi: F -> G(- + tau)` are enumerated; for each one the conditions on
/// `psi: G -> F(- + tau)` are linear and solved directly.
pub fn is_interleaved(f: &GridModule, g: &GridModule, tau: &[Rational]) -> Result<bool, FcfError> {
    if tau.len() != f.r() {
        return Err(GridError::DimensionMismatch("shift has wrong length").into());
    }
    if let Some(x) = tau.iter().find(|x| x.is_negative()) {
        return Err(GridError::NegativeCoordinate(*x).into());
    }
    let (f, g) = f.align(g)?;
    let mut mu = f.alpha();
    for &x in tau {
        if !x.is_zero() {
            mu = rational_gcd(mu, x);
        }
    }
    let d = (f.alpha() / mu).to_integer() as usize;
    let (f, g) = (f.rescale(d), g.rescale(d));
    let k: Vec<usize> = tau.iter().map(|x| (x / mu).to_integer() as usize).collect();
    let gk = g.shift_lattice(&k);
    let fk = f.shift_lattice(&k);
    let (fwd, bwd) = (nat_basis(&f, &gk)?, nat_basis(&g, &fk)?);
    // Enumerate on the side with the smaller transformation space.
    let (a, b, ak, basis) = if fwd.len() <= bwd.len() { (&f, &g, &gk, fwd) } else { (&g, &f, &fk, bwd) };
    let ashift = a.shift_lattice(&k);
    let tuples = coefficient_tuples(a.field(), basis.len(), NAT_ENUMERATION_CAP)
        .ok_or(FcfError::NatSpaceTooLarge { dim: basis.len() })?;
    let grid = a.grid();
    let kk: Vec<usize> = k.iter().map(|x| 2 * x).collect();
    for c in tuples {
        let phi = nat_combination(&basis, &c, a, ak);
        let mut sys = NatSystem::new(b, &ashift)?;
        sys.add_naturality();
        for v in grid.points() {
            let w = grid.shift(&v, &k);
            let wi = grid.index(&w);
            let vi = grid.index(&v);
            // psi_{v+k} phi_v = A(v <= v + 2k)
            let id = Matrix::identity(a.field(), ashift.dim_at(wi));
            sys.add_sandwich(wi, &id, phi.at(&v), &a.shift_map(&v, &kk));
            // phi_{v+k} psi_v = B(v <= v + 2k)
            let id = Matrix::identity(a.field(), b.dim_at(vi));
            sys.add_sandwich(vi, phi.at(&w), &id, &b.shift_map(&v, &kk));
        }
        if sys.solve().is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}
