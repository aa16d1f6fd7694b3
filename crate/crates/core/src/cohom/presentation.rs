//! Presentations on the generators of a matrix group, and their
//! certification by relator evaluation plus coset enumeration.

use thiserror::Error;

use super::todd_coxeter::{todd_coxeter, EnumerationError, DEFAULT_MAX_ROWS};
use super::word::{Letter, Word, WordError};
use crate::gf::FpMatrix;
use crate::grp::MatrixGroup;

/// Groups up to this order are certified by enumerating cosets of the
/// trivial subgroup; larger ones over a subgroup, see [`Certificate`].
pub const TRIVIAL_SUBGROUP_LIMIT: u128 = 30_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Enumeration(#[from] EnumerationError),
    #[error("presentation has {presentation} generators, group has {group}")]
    GeneratorCount { presentation: usize, group: usize },
    #[error("relator {0} does not evaluate to the identity")]
    RelatorFails(String),
    #[error("presented group has order {presented}, matrix group has order {group}")]
    OrderMismatch { presented: u128, group: u128 },
    #[error("no generator has a pure power relator x^k with k its order; cannot pick a cyclic subgroup")]
    NoCyclicSubgroup,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: usize,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(generators: usize, relators: Vec<Word>) -> Self {
        Presentation {
            generators,
            relators,
        }
    }

    pub fn parse(generators: usize, relators: &[&str]) -> Result<Self, PresentationError> {
        let relators = relators
            .iter()
            .map(|r| Word::parse(r, generators))
            .collect::<Result<_, _>>()?;
        Ok(Presentation::new(generators, relators))
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn without_relator(&self, index: usize) -> Presentation {
        let mut relators = self.relators.clone();
        relators.remove(index);
        Presentation::new(self.generators, relators)
    }

    /// Index of the subgroup generated by `subgroup` in the presented group.
    pub fn coset_index(&self, subgroup: &[Word], max_rows: usize) -> Result<usize, EnumerationError> {
        todd_coxeter(self.generators, &self.relators, subgroup, max_rows)
    }
}

/// How the order of the presented group was established.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Cosets of the trivial subgroup were enumerated; their number is `|G|`.
    TrivialSubgroup { index: usize },
    /// The relator `x^k` bounds `|<x>|` by `k`; the index of `<x>` times `k`
    /// equals `|G|`.
    CyclicSubgroup {
        generator: usize,
        power: u64,
        index: usize,
    },
    /// With three or more generators: `K`, generated by all but the last,
    /// is a quotient of the group presented by the relators in those
    /// generators alone, whose order is certified recursively. The index of
    /// `K` times that order equals `|G|`.
    PrefixSubgroup {
        generators: usize,
        subgroup_order: u128,
        index: usize,
    },
}

/// A presentation proven to define its matrix group: every relator holds
/// there, and the presented group is no larger than the matrix group. Since
/// the matrix group is a quotient of the presented one, they are isomorphic
/// via the generator correspondence.
#[derive(Clone, Debug)]
pub struct CertifiedPresentation {
    group: MatrixGroup,
    presentation: Presentation,
    certificate: Certificate,
}

impl CertifiedPresentation {
    pub fn group(&self) -> &MatrixGroup {
        &self.group
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn certificate(&self) -> &Certificate {
        &self.certificate
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    /// Certifies the same presentation on another group: when its
    /// generators satisfy every relator and it has the certified order, it
    /// is a quotient of the presented group of full order, hence isomorphic
    /// via the generator correspondence.
    pub fn transfer(&self, group: &MatrixGroup) -> Result<CertifiedPresentation, PresentationError> {
        let gens = group.generators();
        if gens.len() != self.presentation.generators() {
            return Err(PresentationError::GeneratorCount {
                presentation: self.presentation.generators(),
                group: gens.len(),
            });
        }
        if !gens.is_empty() {
            let invs = inverses(gens);
            for r in self.presentation.relators() {
                if !r.evaluate(gens, &invs).is_identity() {
                    return Err(PresentationError::RelatorFails(r.to_string()));
                }
            }
        }
        if group.order() != self.order() {
            return Err(PresentationError::OrderMismatch {
                presented: self.order(),
                group: group.order(),
            });
        }
        Ok(CertifiedPresentation {
            group: group.clone(),
            presentation: self.presentation.clone(),
            certificate: self.certificate.clone(),
        })
    }
}

fn inverses(gens: &[FpMatrix]) -> Vec<FpMatrix> {
    gens.iter().map(|g| g.inverse().expect("invertible")).collect()
}

/// Checks that every relator holds in `group` and that coset enumeration
/// bounds the presented group's order by `|group|`.
pub fn verify_presentation(
    group: &MatrixGroup,
    pres: &Presentation,
) -> Result<CertifiedPresentation, PresentationError> {
    verify_presentation_with(group, pres, DEFAULT_MAX_ROWS)
}

pub fn verify_presentation_with(
    group: &MatrixGroup,
    pres: &Presentation,
    max_rows: usize,
) -> Result<CertifiedPresentation, PresentationError> {
    let gens = group.generators();
    if gens.len() != pres.generators() {
        return Err(PresentationError::GeneratorCount {
            presentation: pres.generators(),
            group: gens.len(),
        });
    }
    let order = group.order();
    if gens.is_empty() {
        return Ok(CertifiedPresentation {
            group: group.clone(),
            presentation: pres.clone(),
            certificate: Certificate::TrivialSubgroup { index: 1 },
        });
    }
    let invs = inverses(gens);
    for r in pres.relators() {
        if !r.evaluate(gens, &invs).is_identity() {
            return Err(PresentationError::RelatorFails(r.to_string()));
        }
    }
    let certificate = if order <= TRIVIAL_SUBGROUP_LIMIT {
        let index = pres.coset_index(&[], max_rows)?;
        if index as u128 != order {
            return Err(PresentationError::OrderMismatch {
                presented: index as u128,
                group: order,
            });
        }
        Certificate::TrivialSubgroup { index }
    } else if pres.generators() >= 3 {
        let k = pres.generators() - 1;
        let sub_relators: Vec<Word> = pres
            .relators()
            .iter()
            .filter(|r| r.generator_bound() <= k)
            .cloned()
            .collect();
        let sub_group = MatrixGroup::new(group.p(), group.dim(), gens[..k].to_vec())
            .expect("generators of a matrix group are invertible");
        let sub = verify_presentation_with(&sub_group, &Presentation::new(k, sub_relators), max_rows)?;
        let subgroup: Vec<Word> = (0..k).map(Word::generator).collect();
        let index = pres.coset_index(&subgroup, max_rows)?;
        let presented = index as u128 * sub.order();
        if presented != order {
            return Err(PresentationError::OrderMismatch {
                presented,
                group: order,
            });
        }
        Certificate::PrefixSubgroup {
            generators: k,
            subgroup_order: sub.order(),
            index,
        }
    } else {
        let (generator, power) = cyclic_subgroup_choice(pres).ok_or(PresentationError::NoCyclicSubgroup)?;
        let index = pres.coset_index(&[Word::generator(generator)], max_rows)?;
        let presented = index as u128 * power as u128;
        if presented != order {
            return Err(PresentationError::OrderMismatch {
                presented,
                group: order,
            });
        }
        Certificate::CyclicSubgroup {
            generator,
            power,
            index,
        }
    };
    Ok(CertifiedPresentation {
        group: group.clone(),
        presentation: pres.clone(),
        certificate,
    })
}

/// The generator with the largest pure power relator `x^k`, ties going to
/// the lower index.
fn cyclic_subgroup_choice(pres: &Presentation) -> Option<(usize, u64)> {
    let mut best: Option<(usize, u64)> = None;
    for r in pres.relators() {
        let ls = r.letters();
        let Some(&first) = ls.first() else { continue };
        if ls.iter().all(|&l: &Letter| l == first) {
            let k = ls.len() as u64;
            let better = match best {
                None => true,
                Some((g, bk)) => k > bk || (k == bk && first.gen < g),
            };
            if better {
                best = Some((first.gen, k));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> MatrixGroup {
        MatrixGroup::new(
            2,
            2,
            vec![
                FpMatrix::from_rows(2, &[&[0, 1], &[1, 0]]),
                FpMatrix::from_rows(2, &[&[0, 1], &[1, 1]]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn certify_s3() {
        let pres = Presentation::parse(2, &["a^2", "b^3", "(a*b)^2"]).unwrap();
        let cert = verify_presentation(&s3(), &pres).unwrap();
        assert_eq!(cert.certificate(), &Certificate::TrivialSubgroup { index: 6 });
    }

    #[test]
    fn dropped_relator_is_rejected() {
        let pres = Presentation::parse(2, &["a^2", "b^3", "(a*b)^2"]).unwrap();
        let weaker = pres.without_relator(2);
        let err = verify_presentation_with(&s3(), &weaker, 10_000).unwrap_err();
        assert!(matches!(
            err,
            PresentationError::Enumeration(EnumerationError::Overflow(_))
                | PresentationError::OrderMismatch { .. }
        ));
    }

    #[test]
    fn false_relator_is_named() {
        let pres = Presentation::parse(2, &["a^2", "b^2"]).unwrap();
        assert_eq!(
            verify_presentation(&s3(), &pres).unwrap_err(),
            PresentationError::RelatorFails("b^2".into())
        );
    }
}
