//! A Galois extension `K/F` together with a presentation of its group and
//! the generating automorphisms.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::ext::{Automorphism, ExtElem, ExtensionField};
use crate::group::{GroupKind, Presentation};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct GaloisExtension<S> {
    field: ExtensionField<S>,
    presentation: Presentation,
    gens: Vec<Automorphism<S>>,
}

impl<S: Scalar> GaloisExtension<S> {
    /// Validates the generator images and the presentation relations.
    pub fn new(field: ExtensionField<S>, presentation: Presentation, gammas: Vec<ExtElem<S>>) -> Result<Self> {
        let ext = Self::new_unchecked(field, presentation, gammas)?;
        ext.check_relations()?;
        Ok(ext)
    }

    /// Checks the generator images are roots of `P` but skips the relation
    /// and faithfulness checks (used for large benchmark families).
    pub fn new_unchecked(field: ExtensionField<S>, presentation: Presentation, gammas: Vec<ExtElem<S>>) -> Result<Self> {
        if gammas.len() != presentation.rank() {
            return Err(Error::InvalidPresentation(format!(
                "{} generators given for {} relative orders",
                gammas.len(),
                presentation.rank()
            )));
        }
        if presentation.size() != field.degree() {
            return Err(Error::InvalidPresentation(format!(
                "group order {} differs from the degree {}",
                presentation.size(),
                field.degree()
            )));
        }
        let gens = gammas
            .into_iter()
            .enumerate()
            .map(|(k, g)| field.automorphism(g, k + 1))
            .collect::<Result<Vec<_>>>()?;
        Ok(GaloisExtension { field, presentation, gens })
    }

    pub fn field(&self) -> &ExtensionField<S> {
        &self.field
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn generators(&self) -> &[Automorphism<S>] {
        &self.gens
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    fn check_relations(&self) -> Result<()> {
        let k = &self.field;
        let id = k.identity();
        let orders = self.presentation.orders();
        match self.presentation.kind() {
            GroupKind::Abelian => {
                for (j, g) in self.gens.iter().enumerate() {
                    if k.aut_pow(g, orders[j] as u64) != id {
                        return Err(Error::RelationViolated(format!("g_{}^{} = 1", j + 1, orders[j])));
                    }
                    for (i, h) in self.gens.iter().enumerate().take(j) {
                        if k.compose(g, h) != k.compose(h, g) {
                            return Err(Error::RelationViolated(format!("g_{} g_{} = g_{} g_{}", i + 1, j + 1, j + 1, i + 1)));
                        }
                    }
                }
            }
            GroupKind::Metacyclic { m, s, t, u } => {
                let (sigma, tau) = (&self.gens[0], &self.gens[1]);
                if k.aut_pow(sigma, m as u64) != id {
                    return Err(Error::RelationViolated("sigma^m = 1".into()));
                }
                if k.aut_pow(tau, s as u64) != k.aut_pow(sigma, t as u64) {
                    return Err(Error::RelationViolated("tau^s = sigma^t".into()));
                }
                if k.compose(sigma, tau) != k.compose(tau, &k.aut_pow(sigma, u as u64)) {
                    return Err(Error::RelationViolated("tau^-1 sigma tau = sigma^u".into()));
                }
            }
            GroupKind::Polycyclic => {}
        }
        let auts = self.all_automorphisms();
        let distinct: HashSet<&ExtElem<S>> = auts.iter().map(Automorphism::gamma).collect();
        if distinct.len() != auts.len() {
            return Err(Error::RelationViolated("normal-form words are not pairwise distinct".into()));
        }
        Ok(())
    }

    /// All `n` automorphisms `g_r^{i_r} ... g_1^{i_1}` in enumeration order.
    pub fn all_automorphisms(&self) -> Vec<Automorphism<S>> {
        let k = &self.field;
        let mut auts = vec![k.identity()];
        for (g, &e) in self.gens.iter().zip(self.presentation.orders()) {
            let prev = auts.clone();
            let mut power = k.identity();
            for _ in 1..e {
                power = k.compose(g, &power);
                auts.extend(prev.iter().map(|h| k.compose(&power, h)));
            }
        }
        auts
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupElement;
    use crate::poly::Poly;
    use crate::scalar::Rational;

    #[test]
    fn biquadratic_relations() {
        let k = ExtensionField::<Rational>::new(Poly::from_i64(&[1, 0, -10, 0, 1])).unwrap();
        let g1 = k.elem_i64(&[0, 10, 0, -1]).unwrap();
        let g2 = k.elem_i64(&[0, -10, 0, 1]).unwrap();
        let gp = Presentation::abelian(vec![2, 2]).unwrap();
        let ext = GaloisExtension::new(k.clone(), gp.clone(), vec![g1.clone(), g2]).unwrap();
        assert_eq!(ext.all_automorphisms().len(), 4);
        // the same generator twice is not faithful
        assert!(GaloisExtension::new(k, gp, vec![g1.clone(), g1]).is_err());
    }

    #[test]
    fn cyclotomic_orders() {
        let k = ExtensionField::<Rational>::new(Poly::from_i64(&[1, 1, 1, 1, 1])).unwrap();
        let g = k.elem_i64(&[0, 0, 1, 0]).unwrap();
        let ext = GaloisExtension::new(k.clone(), Presentation::abelian(vec![4]).unwrap(), vec![g.clone()]).unwrap();
        let auts = ext.all_automorphisms();
        assert_eq!(auts[ext.presentation().index(&GroupElement::new(vec![1]))].gamma(), &g);
        assert!(GaloisExtension::new(k, Presentation::abelian(vec![2, 2]).unwrap(), vec![g.clone(), g]).is_err());
    }
}
