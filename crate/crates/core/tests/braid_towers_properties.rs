mod common;

use premkit::braid::*;
use premkit::freegroup::FreeWord;
use premkit::linkhomotopy::rf_equal;
use premkit::towers::*;
use rand::Rng;

use common::{kernel_pool, random_braid, random_pure_braid, rng};

fn bw(d: usize, letters: &[i32]) -> BraidWord {
    BraidWord::new(d, letters.to_vec()).unwrap()
}

#[test]
fn artin_images_satisfy_the_braid_relations() {
    for d in 2..=6 {
        for i in 1..d as i32 {
            for j in 1..d as i32 {
                let (lhs, rhs) = if (i - j).abs() == 1 {
                    (bw(d, &[i, j, i]), bw(d, &[j, i, j]))
                } else {
                    (bw(d, &[i, j]), bw(d, &[j, i]))
                };
                assert_eq!(artin_action(&lhs), artin_action(&rhs), "d={d} i={i} j={j}");
            }
            assert!(artin_action(&bw(d, &[i, -i])).is_identity());
        }
    }
}

#[test]
fn artin_images_fix_the_boundary_product() {
    let mut r = rng(31);
    for _ in 0..200 {
        let d = r.gen_range(2..=6);
        let b = random_braid(&mut r, d, 30);
        let boundary = FreeWord::boundary_product(d);
        assert_eq!(artin_action(&b).apply(&boundary), boundary);
    }
}

#[test]
fn artin_action_and_permutation_are_homomorphisms() {
    let mut r = rng(32);
    for _ in 0..500 {
        let d = r.gen_range(2..=6);
        let b1 = random_braid(&mut r, d, 12);
        let b2 = random_braid(&mut r, d, 12);
        let b12 = b1.concat(&b2);
        assert_eq!(permutation_of(&b12), permutation_of(&b1).then(&permutation_of(&b2)));
        assert_eq!(artin_action(&b12), artin_action(&b1).then(&artin_action(&b2)));
        assert_eq!(artin_action(&b12).permutation(), &permutation_of(&b12));
        assert!(is_trivial_braid(&b1.concat(&b1.inverse())));
    }
}

/// Signed crossings between strands, read off the Artin images: the
/// conjugator of `x_i` in a pure braid has exponent sum `lk(i, j)` in `x_j`.
fn abelianized_linking(b: &BraidWord) -> Vec<Vec<i64>> {
    let a = artin_action(b);
    let d = b.strands();
    (1..=d)
        .map(|i| {
            (1..=d)
                .map(|j| if i == j { 0 } else { a.conjugator(i).exponent_sum(j) })
                .collect()
        })
        .collect()
}

#[test]
fn linking_matrix_matches_the_abelianized_action() {
    let mut r = rng(33);
    for _ in 0..200 {
        let d = r.gen_range(2..=5);
        let b = random_pure_braid(&mut r, d, 8);
        let lk = linking_matrix(&b).unwrap();
        assert_eq!(lk, abelianized_linking(&b), "{:?}", b.letters());
        for (i, row) in lk.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, lk[j][i]);
            }
        }
    }
    assert!(linking_matrix(&bw(3, &[1])).is_err());
}

/// `[g A_ij g⁻¹, h A_ij h⁻¹]` for pure `g, h`: strand `j` meets the same
/// meridian twice, which link homotopy undoes.
fn self_commutator(r: &mut impl Rng, d: usize) -> BraidWord {
    let i = r.gen_range(1..d);
    let j = r.gen_range(i + 1..=d);
    let a = BraidWord::pure_generator(d, i, j);
    let g = random_pure_braid(r, d, 2);
    let h = random_pure_braid(r, d, 2);
    let conj = |c: &BraidWord| c.concat(&a).concat(&c.inverse());
    conj(&g).commutator(&conj(&h))
}

/// Inserts `σᵢσᵢ₊₁σᵢ(σᵢ₊₁σᵢσᵢ₊₁)⁻¹` at a random position.
fn insert_relation(r: &mut impl Rng, b: &BraidWord) -> BraidWord {
    let d = b.strands();
    let i = r.gen_range(1..d as i32 - 1);
    let rel = bw(d, &[i, i + 1, i, -(i + 1), -i, -(i + 1)]);
    let at = r.gen_range(0..=b.len());
    let mut letters = b.letters()[..at].to_vec();
    letters.extend_from_slice(rel.letters());
    letters.extend_from_slice(&b.letters()[at..]);
    bw(d, &letters)
}

#[test]
fn projections_form_a_chain() {
    let mut r = rng(34);
    let mut hb_trivial_seen = 0;
    for k in 0..300 {
        let d = r.gen_range(3..=4);
        let b = match k % 3 {
            0 => random_braid(&mut r, d, 10),
            1 => random_pure_braid(&mut r, d, 4),
            _ => self_commutator(&mut r, d),
        };
        let trivial = is_trivial_braid(&b);
        let hb = hb_is_trivial(&b);
        let pure = permutation_of(&b).is_identity();
        assert!(!trivial || hb);
        assert!(!hb || pure);
        if hb {
            hb_trivial_seen += 1;
            assert!(linking_matrix(&b).unwrap().iter().flatten().all(|&x| x == 0));
        }
        assert_eq!(hb_is_trivial(&insert_relation(&mut r, &b)), hb);
    }
    assert!(hb_trivial_seen >= 100);
}

/// Word-level oracle: compare every free-group image with its generator.
fn hb_trivial_by_words(b: &BraidWord) -> bool {
    let a = artin_action(b);
    let d = b.strands();
    a.permutation().is_identity()
        && (1..=d).all(|i| rf_equal(a.image(i), &FreeWord::generator(d, i)))
}

#[test]
fn hb_triviality_matches_the_word_oracle() {
    let mut r = rng(41);
    for k in 0..300 {
        let d = r.gen_range(2..=4);
        let b = match k % 3 {
            0 => random_braid(&mut r, d, 8),
            1 => random_pure_braid(&mut r, d, 3),
            _ => {
                let i = r.gen_range(1..d);
                let j = r.gen_range(i + 1..=d);
                let a = BraidWord::pure_generator(d, i, j);
                let g = random_pure_braid(&mut r, d, 1);
                a.commutator(&g.concat(&a).concat(&g.inverse()))
            }
        };
        assert_eq!(hb_is_trivial(&b), hb_trivial_by_words(&b), "{:?}", b.letters());
    }
}

#[test]
fn self_commutators_are_homotopically_trivial_but_not_trivial() {
    let d = 3;
    let a = BraidWord::pure_generator(d, 1, 3);
    let g = BraidWord::pure_generator(d, 2, 3);
    let b = a.commutator(&g.concat(&a).concat(&g.inverse()));
    assert!(hb_is_trivial(&b));
    assert!(!is_trivial_braid(&b));
}

#[test]
fn level_image_is_a_homomorphism() {
    let mut r = rng(35);
    for _ in 0..200 {
        let d = r.gen_range(2..=4);
        let n = r.gen_range(2..=4);
        let a = artin_action(&random_braid(&mut r, d, 10));
        let b = artin_action(&random_braid(&mut r, d, 10));
        let lhs = level_image(&a.then(&b), n).unwrap();
        let rhs = level_image(&a, n).unwrap().then(&level_image(&b, n).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        let top = level_image(&a, n).unwrap();
        assert_eq!(top.boundary_image(), level_image(&ConjugacyAutomorphism::identity(d), n).unwrap().boundary_image());
    }
}

#[test]
fn level_two_sees_exactly_the_permutation() {
    let mut r = rng(36);
    let mut equal = 0;
    for k in 0..100 {
        let d = r.gen_range(2..=5);
        let b1 = random_braid(&mut r, d, 10);
        let b2 = if k % 2 == 0 {
            b1.concat(&random_pure_braid(&mut r, d, 4))
        } else {
            random_braid(&mut r, d, 10)
        };
        let p = level_image(&artin_action(&b1), 2).unwrap();
        let q = level_image(&artin_action(&b2), 2).unwrap();
        let same = permutation_of(&b1) == permutation_of(&b2);
        assert_eq!(tower_equal(&p, &q).unwrap(), same);
        equal += same as usize;
    }
    assert!(equal >= 50);
}

#[test]
fn truncation_is_functorial() {
    let mut r = rng(37);
    for _ in 0..100 {
        let d = r.gen_range(2..=4);
        let a = artin_action(&random_braid(&mut r, d, 10));
        let top = level_image(&a, 5).unwrap();
        for n in 2..=5 {
            assert_eq!(top.truncate(n).unwrap(), level_image(&a, n).unwrap());
        }
    }
}

#[test]
fn kernel_degree_of_pure_generators() {
    for d in 2..=4 {
        for i in 1..d {
            for j in i + 1..=d {
                let a = artin_action(&BraidWord::pure_generator(d, i, j));
                assert_eq!(kernel_degree(&a, 5).unwrap(), KernelDegree::Exact(3));
            }
        }
        assert_eq!(
            kernel_degree(&ConjugacyAutomorphism::identity(d), 5).unwrap(),
            KernelDegree::AtLeast(5)
        );
    }
}

#[test]
fn kernel_levels_are_central_among_pure_braids() {
    let mut r = rng(38);
    for d in [3, 4] {
        for n in [2, 3] {
            let pool = kernel_pool(d, n);
            assert!(!pool.is_empty());
            for _ in 0..50 {
                let a = artin_action(&pool[r.gen_range(0..pool.len())]);
                let b = artin_action(&random_pure_braid(&mut r, d, 6));
                let ab = level_image(&a.then(&b), n + 1).unwrap();
                let ba = level_image(&b.then(&a), n + 1).unwrap();
                assert_eq!(ab, ba, "d={d} n={n}");
            }
        }
    }
}

#[test]
fn humphries_follows_the_permutation_order() {
    let mut r = rng(39);
    for _ in 0..300 {
        let d = r.gen_range(2..=8);
        let b = random_braid(&mut r, d, 12);
        let cert = humphries_certificate(&b);
        let order = permutation_of(&b).order();
        assert_eq!(cert.permutation_order, order);
        let divisible = [2, 3, 5].iter().any(|p| order.is_multiple_of(*p));
        assert_eq!(cert.verdict == HumphriesVerdict::InfiniteOrder, divisible);
    }
}

#[test]
fn covering_lift_needs_a_trivial_relator() {
    let mut r = rng(40);
    for _ in 0..50 {
        let d = r.gen_range(2..=4);
        let b = random_braid(&mut r, d, 6);
        assert!(covering_lift_check(1, &[b.clone(), b.pow(3)]).unwrap());
    }
    assert!(!covering_lift_check(1, &[bw(3, &[1]), bw(3, &[2])]).unwrap());
    assert!(covering_lift_check(0, &[]).unwrap());
}
