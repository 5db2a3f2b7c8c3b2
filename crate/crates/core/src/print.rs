//! Canonical text form of chains: terms sorted by rendered key, each with an
//! explicit sign, e.g. `+1·[t(x)^-1] −1·[]`.

use num_bigint::Sign;

use crate::chain::Chain;
use crate::cobar::CobarElement;
use crate::loop_group::GroupChain;
use crate::sset::SimplicialSet;

pub fn print_chain<K: Ord + Clone>(c: &Chain<K>, render: impl Fn(&K) -> String, long: bool) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let mut terms: Vec<(String, String)> = c
        .iter()
        .map(|(k, v)| {
            let s = if v.sign() == Sign::Minus { "\u{2212}" } else { "+" };
            (render(k), format!("{s}{}", v.magnitude()))
        })
        .collect();
    terms.sort();
    let parts: Vec<String> = terms.into_iter().map(|(k, v)| format!("{v}·{k}")).collect();
    parts.join(if long { "\n" } else { " " })
}

pub fn print_group_chain(x: &SimplicialSet, c: &GroupChain, long: bool) -> String {
    print_chain(c, |w| w.render(x), long)
}

pub fn print_cobar(x: &SimplicialSet, e: &CobarElement, long: bool) -> String {
    print_chain(e, |w| w.render(x), long)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cobar::{letter, CobarLetter};
    use crate::models::deltabar;
    use crate::retraction::Retraction;
    use crate::szczarba::Szczarba;
    use crate::loop_group::tau;
    use crate::sset::Simplex;

    #[test]
    fn canonical_forms() {
        let x = deltabar(2);
        assert_eq!(print_cobar(&x, &Chain::zero(1), false), "0");
        let e = x.find(1, "(01)").unwrap();
        let phi = Szczarba::new(&x).unwrap().on_suspension(e).unwrap();
        assert_eq!(print_group_chain(&x, &phi, false), "\u{2212}1·[] +1·[t((01))^-1]");
        let t = Simplex::nondegenerate(x.find(2, "(012)").unwrap());
        let psi = Retraction::new(&x).unwrap().on_word(&tau(t).unwrap().inv()).unwrap();
        assert_eq!(print_cobar(&x, &psi, true), "+1·[s-1 (012) | inv (12)]");
        let l = letter(CobarLetter::Inverse(e));
        assert_eq!(print_cobar(&x, &l.scale(&(-3).into()), false), "\u{2212}3·[inv (01)]");
    }
}
