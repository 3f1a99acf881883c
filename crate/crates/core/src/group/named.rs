//! Standard permutation models of small groups.

use super::perm::{Perm, PermGroup, DEFAULT_ORDER_CAP};
use crate::error::{Error, Result};

/// Degree and generators of a named group.
#[derive(Clone, Debug)]
pub struct GroupGenerators {
    pub degree: usize,
    pub generators: Vec<Perm>,
}

impl GroupGenerators {
    pub fn enumerate(self, cap: usize) -> Result<PermGroup> {
        PermGroup::enumerate(self.degree, self.generators, cap)
    }
}

fn cycle(degree: usize, points: &[usize]) -> Perm {
    Perm::from_cycles(degree, &[points]).expect("points lie below the degree")
}

/// `C_n` acting regularly on `n` points.
pub fn cyclic_generators(n: usize) -> Result<GroupGenerators> {
    if n == 0 {
        return Err(Error::Config("cyclic group needs n >= 1".into()));
    }
    let generators = if n == 1 { vec![] } else { vec![cycle(n, &(0..n).collect::<Vec<_>>())] };
    Ok(GroupGenerators { degree: n, generators })
}

/// Dihedral group of order `2n`: symmetries of an `n`-gon. `D_2` is the Klein four-group on 4 points.
pub fn dihedral_generators(n: usize) -> Result<GroupGenerators> {
    match n {
        0 | 1 => Err(Error::Config("dihedral group needs n >= 2".into())),
        2 => Ok(GroupGenerators {
            degree: 4,
            generators: vec![
                Perm::from_cycles(4, &[&[0, 1], &[2, 3]])?,
                Perm::from_cycles(4, &[&[0, 2], &[1, 3]])?,
            ],
        }),
        _ => {
            let rotation = cycle(n, &(0..n).collect::<Vec<_>>());
            let reflection = Perm::from_images((0..n).map(|i| (n - i) % n).collect())?;
            Ok(GroupGenerators { degree: n, generators: vec![rotation, reflection] })
        }
    }
}

/// `Sym(n)` generated by the adjacent transpositions `(i i+1)`.
pub fn symmetric_generators(n: usize) -> Result<GroupGenerators> {
    if n == 0 {
        return Err(Error::Config("symmetric group needs n >= 1".into()));
    }
    let generators = (0..n.saturating_sub(1)).map(|i| cycle(n, &[i, i + 1])).collect();
    Ok(GroupGenerators { degree: n, generators })
}

/// `Alt(n)` generated by the 3-cycles `(0 1 i)`.
pub fn alternating_generators(n: usize) -> Result<GroupGenerators> {
    if n == 0 {
        return Err(Error::Config("alternating group needs n >= 1".into()));
    }
    let generators = (2..n).map(|i| cycle(n, &[0, 1, i])).collect();
    Ok(GroupGenerators { degree: n, generators })
}

/// Quaternion group of order 8 acting on itself by left multiplication.
///
/// Points 0..8 stand for `1, -1, i, -i, j, -j, k, -k`.
pub fn quaternion8_generators() -> GroupGenerators {
    let i = Perm::from_images(vec![2, 3, 1, 0, 6, 7, 5, 4]).expect("left multiplication by i");
    let j = Perm::from_images(vec![4, 5, 7, 6, 1, 0, 2, 3]).expect("left multiplication by j");
    GroupGenerators { degree: 8, generators: vec![i, j] }
}

/// Direct product acting on the disjoint union of the factors' points.
pub fn product_generators(factors: &[GroupGenerators]) -> GroupGenerators {
    let degree: usize = factors.iter().map(|f| f.degree).sum();
    let mut generators = Vec::new();
    let mut offset = 0;
    for f in factors {
        for g in &f.generators {
            let mut images: Vec<usize> = (0..degree).collect();
            for (x, &y) in g.images().iter().enumerate() {
                images[offset + x] = offset + y;
            }
            generators.push(Perm::from_images(images).expect("shifted permutation"));
        }
        offset += f.degree;
    }
    GroupGenerators { degree, generators }
}

/// Parses names such as `C4`, `D4`, `S3`, `A4`, `Q8`, `V4` and products like `C2xS3`.
pub fn generators_by_name(name: &str) -> Result<GroupGenerators> {
    let name = name.trim();
    if name.contains(['x', '×']) {
        let factors = name
            .split(['x', '×'])
            .map(generators_by_name)
            .collect::<Result<Vec<_>>>()?;
        return Ok(product_generators(&factors));
    }
    let unknown = || Error::Config(format!("unknown group name {name:?}"));
    match name {
        "Q8" => return Ok(quaternion8_generators()),
        "V4" | "K4" => return dihedral_generators(2),
        _ => {}
    }
    let mut chars = name.chars();
    let family = chars.next().ok_or_else(unknown)?;
    let n: usize = chars.as_str().parse().map_err(|_| unknown())?;
    match family {
        'C' | 'Z' => cyclic_generators(n),
        'D' => dihedral_generators(n),
        'S' => symmetric_generators(n),
        'A' => alternating_generators(n),
        _ => Err(unknown()),
    }
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    cyclic_generators(n)?.enumerate(DEFAULT_ORDER_CAP)
}

pub fn dihedral(n: usize) -> Result<PermGroup> {
    dihedral_generators(n)?.enumerate(DEFAULT_ORDER_CAP)
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    symmetric_generators(n)?.enumerate(DEFAULT_ORDER_CAP)
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    alternating_generators(n)?.enumerate(DEFAULT_ORDER_CAP)
}

pub fn quaternion8() -> Result<PermGroup> {
    quaternion8_generators().enumerate(DEFAULT_ORDER_CAP)
}

pub fn by_name(name: &str) -> Result<PermGroup> {
    generators_by_name(name)?.enumerate(DEFAULT_ORDER_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;

    #[test]
    fn orders_of_named_groups() {
        let cases = [
            ("C1", 1),
            ("C4", 4),
            ("D4", 8),
            ("D3", 6),
            ("V4", 4),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("A5", 60),
            ("Q8", 8),
            ("C2xS3", 12),
        ];
        for (name, order) in cases {
            assert_eq!(by_name(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion8().unwrap();
        let (i, j) = (q.generator_indices()[0], q.generator_indices()[1]);
        assert_eq!(q.element_order(i), 4);
        assert_eq!(q.mul(i, i), q.mul(j, j));
        assert_eq!(q.mul(q.mul(i, j), q.mul(i, j)), q.mul(i, i));
        assert!(!q.is_abelian());
    }

    #[test]
    fn unknown_names_fail() {
        assert!(by_name("X7").is_err());
        assert!(by_name("S").is_err());
    }
}
