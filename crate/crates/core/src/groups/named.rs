use std::fmt;
use std::str::FromStr;

use super::{FiniteGroup, MAX_TABLE_ORDER};
use crate::error::{Error, Result};
use crate::perm::{close_generators, Permutation};
use crate::Budget;

/// Parsed form of the group descriptor grammar
/// `S<n> | A<n> | C<n> | D<n> | PSL(2,<p>) | PGL(2,<p>) | <spec>x<spec>`.
///
/// `D<n>` is the dihedral group of order `2n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupDescriptor {
    Symmetric(usize),
    Alternating(usize),
    Cyclic(usize),
    Dihedral(usize),
    Psl2(u64),
    Pgl2(u64),
    Product(Vec<GroupDescriptor>),
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupDescriptor::Symmetric(n) => write!(f, "S{n}"),
            GroupDescriptor::Alternating(n) => write!(f, "A{n}"),
            GroupDescriptor::Cyclic(n) => write!(f, "C{n}"),
            GroupDescriptor::Dihedral(n) => write!(f, "D{n}"),
            GroupDescriptor::Psl2(p) => write!(f, "PSL(2,{p})"),
            GroupDescriptor::Pgl2(p) => write!(f, "PGL(2,{p})"),
            GroupDescriptor::Product(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("x"))
            }
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            'x' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

fn parse_atom(s: &str) -> Option<GroupDescriptor> {
    let num = |t: &str| -> Option<usize> {
        if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        t.parse().ok().filter(|&n| n > 0)
    };
    let field = |t: &str, prefix: &str| -> Option<u64> {
        let inner = t.strip_prefix(prefix)?.strip_suffix(')')?;
        let q = inner.strip_prefix("2,")?.trim();
        num(q).map(|q| q as u64)
    };
    if let Some(q) = field(s, "PSL(") {
        return Some(GroupDescriptor::Psl2(q));
    }
    if let Some(q) = field(s, "PGL(") {
        return Some(GroupDescriptor::Pgl2(q));
    }
    let (head, rest) = s.split_at(s.char_indices().nth(1).map(|(i, _)| i).unwrap_or(s.len()));
    let n = num(rest)?;
    match head {
        "S" => Some(GroupDescriptor::Symmetric(n)),
        "A" => Some(GroupDescriptor::Alternating(n)),
        "C" => Some(GroupDescriptor::Cyclic(n)),
        "D" => Some(GroupDescriptor::Dihedral(n)),
        _ => None,
    }
}

impl FromStr for GroupDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parts = split_top_level(s);
        let atoms: Option<Vec<GroupDescriptor>> = parts.iter().map(|p| parse_atom(p.trim())).collect();
        match atoms {
            Some(mut atoms) if atoms.len() == 1 => Ok(atoms.pop().unwrap()),
            Some(atoms) => Ok(GroupDescriptor::Product(atoms)),
            None => Err(Error::UnknownGroup(s.to_string())),
        }
    }
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn is_prime_power(n: u64) -> bool {
    (2..=n).find(|d| n.is_multiple_of(*d)).is_some_and(|p| {
        let mut m = n;
        while m.is_multiple_of(p) {
            m /= p;
        }
        m == 1
    })
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

fn cycle(points: impl Iterator<Item = usize>, degree: usize) -> Permutation {
    let pts: Vec<u32> = points.map(|x| x as u32).collect();
    Permutation::from_cycles(degree, &[&pts]).expect("valid cycle")
}

fn perm_group(name: String, degree: usize, gens: Vec<Permutation>, expected: usize) -> Result<FiniteGroup> {
    if expected > MAX_TABLE_ORDER {
        return Err(Error::budget(format!("constructing {name}"), MAX_TABLE_ORDER));
    }
    let grp = close_generators(&gens, degree, &Budget::default())?;
    if grp.order() != expected {
        return Err(Error::Inconsistency(format!("{name}: closure has order {}, expected {expected}", grp.order())));
    }
    FiniteGroup::from_perm_group(name, &grp)
}

fn symmetric(n: usize) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(0..2, n));
    }
    if n >= 3 {
        gens.push(cycle(0..n, n));
    }
    let order = factorial(n).filter(|&o| o <= MAX_TABLE_ORDER).ok_or_else(|| {
        Error::budget(format!("constructing S{n}"), MAX_TABLE_ORDER)
    })?;
    perm_group(format!("S{n}"), n, gens, order)
}

fn alternating(n: usize) -> Result<FiniteGroup> {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(0..3, n));
    }
    if n >= 4 {
        if n % 2 == 1 {
            gens.push(cycle(0..n, n));
        } else {
            gens.push(cycle(1..n, n));
        }
    }
    let order = factorial(n)
        .map(|f| if n >= 2 { f / 2 } else { f })
        .filter(|&o| o <= MAX_TABLE_ORDER)
        .ok_or_else(|| Error::budget(format!("constructing A{n}"), MAX_TABLE_ORDER))?;
    perm_group(format!("A{n}"), n, gens, order)
}

fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n > MAX_TABLE_ORDER {
        return Err(Error::budget(format!("constructing C{n}"), MAX_TABLE_ORDER));
    }
    let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    let labels = (0..n).map(|k| if k == 0 { "1".to_string() } else { format!("x^{k}") }).collect();
    FiniteGroup::from_table(format!("C{n}"), n, table, gens, Some(labels))
}

fn dihedral(n: usize) -> Result<FiniteGroup> {
    let order = 2 * n;
    if order > MAX_TABLE_ORDER {
        return Err(Error::budget(format!("constructing D{n}"), MAX_TABLE_ORDER));
    }
    // index i + n·j stands for r^i s^j, with s r s = r⁻¹
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        let (i, j) = (a % n, a / n);
        for b in 0..order {
            let (k, l) = (b % n, b / n);
            let rot = if j == 0 { (i + k) % n } else { (i + n - k) % n };
            table[a * order + b] = (rot + n * (j ^ l)) as u32;
        }
    }
    let mut gens = vec![n];
    if n > 1 {
        gens.insert(0, 1);
    }
    let labels = (0..order)
        .map(|a| {
            let (i, j) = (a % n, a / n);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (0, 1) => "s".to_string(),
                (i, 0) => format!("r^{i}"),
                (i, _) => format!("r^{i}s"),
            }
        })
        .collect();
    FiniteGroup::from_table(format!("D{n}"), order, table, gens, Some(labels))
}

fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| (1..p - 1).all(|k| mod_pow(g, k, p) != 1))
        .expect("prime fields have primitive roots")
}

/// PSL(2,p) or PGL(2,p) acting on the projective line `{0, …, p−1, ∞}`, with ∞ = p.
fn projective(p: u64, special: bool) -> Result<FiniteGroup> {
    let name = if special { format!("PSL(2,{p})") } else { format!("PGL(2,{p})") };
    if !is_prime(p) {
        return if is_prime_power(p) {
            Err(Error::UnsupportedField(p))
        } else {
            Err(Error::UnknownGroup(format!("{name}: {p} is not a prime power")))
        };
    }
    let pgl_order = (p * p * p - p) as usize;
    let order = if special && p > 2 { pgl_order / 2 } else { pgl_order };
    if order > MAX_TABLE_ORDER {
        return Err(Error::budget(format!("constructing {name}"), MAX_TABLE_ORDER));
    }
    let deg = p as usize + 1;
    let inf = p as u32;
    let map = |f: &dyn Fn(u64) -> u32, at_inf: u32| -> Permutation {
        let mut images: Vec<u32> = (0..p).map(f).collect();
        images.push(at_inf);
        Permutation::from_images(images).expect("fractional linear maps are bijective")
    };
    let g = primitive_root(p);
    let a = if special { g * g % p } else { g };
    let translate = map(&|x| ((x + 1) % p) as u32, inf);
    let scale = map(&|x| (a * x % p) as u32, inf);
    let invert = map(&|x| if x == 0 { inf } else { ((p - mod_pow(x, p - 2, p)) % p) as u32 }, 0);
    perm_group(name, deg, vec![translate, scale, invert], order)
}

fn build(desc: &GroupDescriptor) -> Result<FiniteGroup> {
    match desc {
        GroupDescriptor::Symmetric(n) => symmetric(*n),
        GroupDescriptor::Alternating(n) => alternating(*n),
        GroupDescriptor::Cyclic(n) => cyclic(*n),
        GroupDescriptor::Dihedral(n) => dihedral(*n),
        GroupDescriptor::Psl2(p) => projective(*p, true),
        GroupDescriptor::Pgl2(p) => projective(*p, false),
        GroupDescriptor::Product(parts) => {
            let mut iter = parts.iter();
            let mut acc = build(iter.next().expect("products have factors"))?;
            for part in iter {
                acc = FiniteGroup::direct_product(&acc, &build(part)?)?;
            }
            Ok(acc)
        }
    }
}

/// Builds a group from a descriptor string such as `S5`, `PGL(2,5)` or `A4xC2`.
pub fn make_named_group(spec: &str) -> Result<FiniteGroup> {
    let desc: GroupDescriptor = spec.parse()?;
    build(&desc)
}

fn atom_order(desc: &GroupDescriptor) -> Option<usize> {
    match *desc {
        GroupDescriptor::Symmetric(n) => factorial(n),
        GroupDescriptor::Alternating(n) => factorial(n).map(|f| if n >= 2 { f / 2 } else { f }),
        GroupDescriptor::Cyclic(n) => Some(n),
        GroupDescriptor::Dihedral(n) => n.checked_mul(2),
        GroupDescriptor::Psl2(p) | GroupDescriptor::Pgl2(p) => {
            let pgl = p.checked_mul(p)?.checked_mul(p)?.checked_sub(p)? as usize;
            let special = matches!(desc, GroupDescriptor::Psl2(_));
            Some(if special && p > 2 { pgl / 2 } else { pgl })
        }
        GroupDescriptor::Product(_) => None,
    }
}

/// Every descriptor of the grammar naming a group of order `n`: nontrivial atoms
/// and their direct products, each multiset of factors listed once. Distinct
/// descriptors may name isomorphic groups (`S3`, `D3`, `PGL(2,2)`).
pub fn catalog_of_order(n: usize) -> Vec<String> {
    if n <= 1 {
        return vec!["C1".to_string()];
    }
    let mut atoms: Vec<(String, usize)> = Vec::new();
    for k in 1..=n {
        let mut cands = vec![
            GroupDescriptor::Symmetric(k),
            GroupDescriptor::Alternating(k),
            GroupDescriptor::Cyclic(k),
            GroupDescriptor::Dihedral(k),
        ];
        if is_prime(k as u64) {
            cands.push(GroupDescriptor::Psl2(k as u64));
            cands.push(GroupDescriptor::Pgl2(k as u64));
        }
        for d in cands {
            if let Some(o) = atom_order(&d).filter(|&o| o > 1 && n.is_multiple_of(o)) {
                atoms.push((d.to_string(), o));
            }
        }
    }
    fn extend(atoms: &[(String, usize)], from: usize, left: usize, acc: &mut Vec<String>, out: &mut Vec<String>) {
        if left == 1 {
            out.push(acc.join("x"));
            return;
        }
        for (i, (name, o)) in atoms.iter().enumerate().skip(from) {
            if left.is_multiple_of(*o) {
                acc.push(name.clone());
                extend(atoms, i, left / o, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&atoms, 0, n, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!("S5".parse::<GroupDescriptor>().unwrap(), GroupDescriptor::Symmetric(5));
        assert_eq!("PSL(2,7)".parse::<GroupDescriptor>().unwrap(), GroupDescriptor::Psl2(7));
        assert_eq!(
            "PGL(2,5)xC2".parse::<GroupDescriptor>().unwrap(),
            GroupDescriptor::Product(vec![GroupDescriptor::Pgl2(5), GroupDescriptor::Cyclic(2)])
        );
        for bad in ["", "Q8", "S", "S0", "Sx", "PSL(3,5)", "C-1", "S5x"] {
            assert!(bad.parse::<GroupDescriptor>().is_err(), "{bad}");
        }
        let d: GroupDescriptor = "A4xD3xC2".parse().unwrap();
        assert_eq!(d.to_string(), "A4xD3xC2");
    }

    #[test]
    fn orders() {
        let cases = [
            ("C1", 1),
            ("C6", 6),
            ("S1", 1),
            ("S3", 6),
            ("S5", 120),
            ("A3", 3),
            ("A4", 12),
            ("A5", 60),
            ("A6", 360),
            ("D4", 8),
            ("D1", 2),
            ("PSL(2,5)", 60),
            ("PSL(2,7)", 168),
            ("PGL(2,5)", 120),
            ("PGL(2,7)", 336),
            ("PSL(2,2)", 6),
            ("S3xC2", 12),
        ];
        for (name, order) in cases {
            assert_eq!(make_named_group(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn field_errors() {
        assert!(matches!(make_named_group("PSL(2,9)"), Err(Error::UnsupportedField(9))));
        assert!(matches!(make_named_group("PGL(2,6)"), Err(Error::UnknownGroup(_))));
        assert!(make_named_group("S9").unwrap_err().is_budget());
    }

    #[test]
    fn dihedral_relations() {
        let d = make_named_group("D5").unwrap();
        let (r, s) = (d.generators()[0], d.generators()[1]);
        assert_eq!(d.element_order(r), 5);
        assert_eq!(d.element_order(s), 2);
        assert_eq!(d.mul(d.mul(s, r), s), d.inv(r));
    }

    #[test]
    fn catalog_lists_every_descriptor_of_an_order() {
        let six = catalog_of_order(6);
        for name in ["S3", "C6", "D3", "PSL(2,2)", "PGL(2,2)", "S2xA3", "C2xC3", "D1xC3"] {
            assert!(six.contains(&name.to_string()), "{name} missing from {six:?}");
        }
        assert!(!six.contains(&"C3xC2".to_string()));
        for n in [4, 6, 8, 12] {
            for name in catalog_of_order(n) {
                assert_eq!(make_named_group(&name).unwrap().order(), n, "{name}");
            }
        }
    }
}
