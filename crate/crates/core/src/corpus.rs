//! Built-in example orders.

use crate::order::{load_order, ZOrder};

macro_rules! corpus_order {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            pub fn $name() -> ZOrder {
                load_order(include_str!(concat!("../corpus/", $file))).expect($file)
            }
        )*

        /// `(name, loader)` for every built-in order.
        pub const ALL: &[(&str, fn() -> ZOrder)] = &[$((stringify!($name), $name)),*];
    };
}

corpus_order! {
    z => "z.json",
    zxz => "zxz.json",
    zz_index2 => "zz_index2.json",
    z_i => "z_i.json",
    z_3i => "z_3i.json",
    z_sqrt5 => "z_sqrt5.json",
    z_golden => "z_golden.json",
    z_x_mod_x2 => "z_x_mod_x2.json",
    m2z => "m2z.json",
    hurwitz => "hurwitz.json",
}

pub fn by_name(name: &str) -> Option<ZOrder> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, f)| f())
}

/// `Z[X]/(f)` for a monic integer polynomial `f` (lowest degree first), with
/// basis `1, x, ..., x^(n-1)`.
pub fn monogenic(f: &[i64]) -> crate::Result<ZOrder> {
    use crate::rational::Z;
    let n = f.len().checked_sub(1).filter(|&n| n >= 1 && f[n] == 1).ok_or_else(|| {
        crate::Error::MalformedInput("expected a monic polynomial of degree at least 1".into())
    })?;
    // reduce x^k for k < 2n - 1
    let mut powers: Vec<Vec<Z>> = (0..n).map(|k| crate::order::unit_vector(n, k)).collect();
    for _ in n..2 * n - 1 {
        let prev = powers.last().expect("nonempty");
        let mut next = vec![Z::from(0); n];
        next[1..].clone_from_slice(&prev[..n - 1]);
        let top = prev[n - 1].clone();
        for (x, c) in next.iter_mut().zip(f) {
            *x -= &top * Z::from(*c);
        }
        powers.push(next);
    }
    let table = (0..n).map(|i| (0..n).map(|j| powers[i + j].clone()).collect()).collect();
    let names = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("x^{k}") }).collect();
    ZOrder::new(names, crate::order::unit_vector(n, 0), table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_load() {
        for (name, f) in ALL {
            assert!(f().dim() >= 1, "{name}");
        }
        assert!(by_name("m2z").is_some());
        assert!(by_name("nope").is_none());
    }

    #[test]
    fn monogenic_orders() {
        assert_eq!(monogenic(&[-5, 0, 1]).unwrap().table(), z_sqrt5().table());
        assert_eq!(monogenic(&[-1, -1, 1]).unwrap().table(), z_golden().table());
        let cubic = monogenic(&[-2, 0, 0, 1]).unwrap();
        assert_eq!(cubic.discriminant(), crate::rational::Z::from(-108));
        assert!(monogenic(&[1, 2]).is_err());
    }
}
