use sha2::{Digest, Sha256};

use super::Group;

/// Conjugacy classes of a group in canonical order, with power maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassData {
    class_of: Vec<usize>,
    representatives: Vec<usize>,
    sizes: Vec<usize>,
    members: Vec<Vec<usize>>,
    inverse_class: Vec<usize>,
    power_class: Vec<Vec<usize>>,
    group_order: usize,
}

/// Partitions the group into conjugation orbits.
///
/// Classes are sorted by (order of representative, class size, smallest
/// element index); the representative is the smallest index in the class.
pub fn conjugacy_classes(g: &Group) -> ClassData {
    let n = g.order();
    let gens = g.generator_witness();
    let mut orbit_id = vec![usize::MAX; n];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if orbit_id[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_id[start] = id;
        let mut orbit = vec![start];
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in gens {
                let y = g.conj(x, s);
                if orbit_id[y] == usize::MAX {
                    orbit_id[y] = id;
                    orbit.push(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits.sort_by_key(|o| (g.element_order(o[0]), o.len(), o[0]));

    let mut class_of = vec![0; n];
    for (c, orbit) in orbits.iter().enumerate() {
        for &x in orbit {
            class_of[x] = c;
        }
    }
    let representatives: Vec<usize> = orbits.iter().map(|o| o[0]).collect();
    let sizes = orbits.iter().map(Vec::len).collect();
    let inverse_class = representatives.iter().map(|&r| class_of[g.inv(r)]).collect();
    let exponent = g.exponent() as usize;
    let mut power_class = vec![vec![0; representatives.len()]; exponent];
    for (c, &r) in representatives.iter().enumerate() {
        let mut x = 0;
        for row in power_class.iter_mut() {
            row[c] = class_of[x];
            x = g.mul(x, r);
        }
    }
    ClassData { class_of, representatives, sizes, members: orbits, inverse_class, power_class, group_order: n }
}

impl ClassData {
    pub fn num_classes(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, g: usize) -> usize {
        self.class_of[g]
    }

    pub fn class_map(&self) -> &[usize] {
        &self.class_of
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn size(&self, c: usize) -> usize {
        self.sizes[c]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn members(&self, c: usize) -> &[usize] {
        &self.members[c]
    }

    pub fn centralizer_order(&self, c: usize) -> usize {
        self.group_order / self.sizes[c]
    }

    pub fn inverse_class(&self, c: usize) -> usize {
        self.inverse_class[c]
    }

    /// Exponent of the group the classes came from.
    pub fn exponent(&self) -> usize {
        self.power_class.len()
    }

    /// Class of `g^m` for `g` in class `c`; `m` is reduced mod the exponent.
    pub fn power_class(&self, m: i64, c: usize) -> usize {
        let e = self.power_class.len() as i64;
        self.power_class[m.rem_euclid(e) as usize][c]
    }

    /// The map `c ↦ class(g_c^m)` for every class.
    pub fn power_map(&self, m: i64) -> &[usize] {
        let e = self.power_class.len() as i64;
        &self.power_class[m.rem_euclid(e) as usize]
    }

    /// Content hash of the class partition and power maps, hex-encoded.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.group_order as u64).to_le_bytes());
        for v in [&self.class_of, &self.sizes, &self.representatives] {
            h.update((v.len() as u64).to_le_bytes());
            for x in v.iter() {
                h.update((*x as u64).to_le_bytes());
            }
        }
        for row in &self.power_class {
            for x in row {
                h.update((*x as u64).to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}
