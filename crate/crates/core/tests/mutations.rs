use mcred::catalog;
use mcred::dgla::{check_nondegenerate_on_cohomology, validate_dgla, validate_form, DglAlgebra};
use mcred::{Rational, Scalar};

fn rejected(g: &DglAlgebra<Rational>) -> bool {
    let Ok(mut r) = validate_dgla(g) else { return true };
    match validate_form(g) {
        Ok(f) => r.extend(f),
        Err(_) => return true,
    }
    if !r.all_passed() {
        return true;
    }
    !matches!(check_nondegenerate_on_cohomology(g), Ok(n) if n.is_nondegenerate())
}

#[test]
fn unmutated_n1_is_accepted() {
    assert!(!rejected(&catalog::n1()));
    assert!(!rejected(&catalog::a1()));
}

#[test]
fn every_single_entry_mutation_of_n1_is_rejected() {
    let base = catalog::n1();
    let n = base.space().dim();
    let mut count = 0;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for delta in [1, -1] {
                    let mut g = base.clone();
                    g.bracket_mut().perturb(&[i, j], k, &Rational::from_i64(delta));
                    assert!(rejected(&g), "[{i},{j}] -> {k} by {delta} accepted");
                    count += 1;
                }
            }
        }
    }
    assert_eq!(count, 2 * 125);
}

#[test]
fn every_antisymmetric_mutation_of_n1_is_rejected() {
    let base = catalog::n1();
    let sp = base.space().clone();
    let n = sp.dim();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                for delta in [1, -1] {
                    let mut g = base.clone();
                    let d = Rational::from_i64(delta);
                    g.bracket_mut().perturb(&[i, j], k, &d);
                    if i != j {
                        // [y, x] = −(−1)^{|x||y|}[x, y]
                        let both_odd = sp.parity(i).is_odd() && sp.parity(j).is_odd();
                        let partner = if both_odd { d.clone() } else { -d.clone() };
                        g.bracket_mut().perturb(&[j, i], k, &partner);
                    }
                    assert!(rejected(&g), "[{}, {}] -> {} by {delta} accepted", sp.label(i), sp.label(j), sp.label(k));
                }
            }
        }
    }
}
