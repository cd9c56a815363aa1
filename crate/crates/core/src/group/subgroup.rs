use std::sync::{Arc, OnceLock};

use super::{Group, GroupError, GroupFlags};

/// A subgroup of a parent group, with a left transversal.
#[derive(Debug)]
pub struct Subgroup {
    parent: Arc<Group>,
    members: Vec<usize>,
    generators: Vec<usize>,
    transversal: Vec<usize>,
    is_normal: bool,
    position: Vec<usize>,
    as_group: OnceLock<Arc<Group>>,
}

/// Closure of `gens` inside `parent`.
pub fn subgroup_closure(parent: &Arc<Group>, gens: &[usize]) -> Result<Subgroup, GroupError> {
    let n = parent.order();
    if let Some(&bad) = gens.iter().find(|&&g| g >= n) {
        return Err(GroupError::BadIndex(bad));
    }
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0];
    let mut head = 0;
    while head < members.len() {
        let x = members[head];
        head += 1;
        for &s in gens {
            let y = parent.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                members.push(y);
            }
        }
    }
    members.sort_unstable();
    Ok(Subgroup::from_members(parent, members, gens.to_vec()))
}

impl Subgroup {
    fn from_members(parent: &Arc<Group>, members: Vec<usize>, generators: Vec<usize>) -> Self {
        let n = parent.order();
        let mut position = vec![usize::MAX; n];
        for (i, &m) in members.iter().enumerate() {
            position[m] = i;
        }
        let mut covered = vec![false; n];
        let mut transversal = Vec::with_capacity(n / members.len());
        for g in 0..n {
            if covered[g] {
                continue;
            }
            transversal.push(g);
            for &h in &members {
                covered[parent.mul(g, h)] = true;
            }
        }
        let is_normal = parent
            .generator_witness()
            .iter()
            .all(|&s| members.iter().all(|&h| position[parent.conj(h, s)] != usize::MAX));
        Subgroup {
            parent: Arc::clone(parent),
            members,
            generators,
            transversal,
            is_normal,
            position,
            as_group: OnceLock::new(),
        }
    }

    /// The subgroup consisting of `members`, which must be closed under
    /// multiplication (checked).
    pub fn from_member_set(parent: &Arc<Group>, mut members: Vec<usize>) -> Result<Self, GroupError> {
        members.sort_unstable();
        members.dedup();
        if members.first() != Some(&0) {
            return Err(GroupError::BadParameters("subset lacks the identity".into()));
        }
        if let Some(&bad) = members.iter().find(|&&g| g >= parent.order()) {
            return Err(GroupError::BadIndex(bad));
        }
        let mut inside = vec![false; parent.order()];
        for &m in &members {
            inside[m] = true;
        }
        for &a in &members {
            for &b in &members {
                if !inside[parent.mul(a, b)] {
                    return Err(GroupError::BadParameters("subset is not closed".into()));
                }
            }
        }
        let gens = members.clone();
        Ok(Subgroup::from_members(parent, members, gens))
    }

    pub fn parent(&self) -> &Arc<Group> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    pub fn transversal(&self) -> &[usize] {
        &self.transversal
    }

    pub fn is_normal(&self) -> bool {
        self.is_normal
    }

    pub fn contains(&self, g: usize) -> bool {
        self.position[g] != usize::MAX
    }

    /// Index of parent element `g` inside [`Subgroup::as_group`], if a member.
    pub fn local_index(&self, g: usize) -> Option<usize> {
        let p = self.position[g];
        (p != usize::MAX).then_some(p)
    }

    /// The subgroup as a group in its own right; element `i` is `members[i]`.
    pub fn as_group(&self) -> &Arc<Group> {
        self.as_group.get_or_init(|| {
            let k = self.members.len();
            let mut mul = vec![0u16; k * k];
            for (i, &a) in self.members.iter().enumerate() {
                for (j, &b) in self.members.iter().enumerate() {
                    mul[i * k + j] = self.position[self.parent.mul(a, b)] as u16;
                }
            }
            let mut gens: Vec<usize> = self.generators.iter().map(|&g| self.position[g]).filter(|&i| i != 0).collect();
            gens.dedup();
            if gens.is_empty() {
                gens.push(0);
            }
            let pf = self.parent.flags();
            // nilpotency and supersolvability pass to subgroups; monomiality does not
            let flags = GroupFlags {
                odd_order: k % 2 == 1,
                nilpotent: pf.nilpotent.filter(|x| *x),
                supersolvable: pf.supersolvable.filter(|x| *x),
                all_irreducibles_monomial: pf.supersolvable.filter(|x| *x),
            };
            let family = format!("subgroup of {} (order {k})", self.parent.family());
            Arc::new(Group::from_table(k, mul, gens).with_family(family).with_flags(flags))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::builtin;

    #[test]
    fn rotation_subgroup_of_dihedral_is_normal() {
        let g = Arc::new(builtin("dihedral:8").unwrap());
        let rot = (0..g.order()).find(|&x| g.element_order(x) == 4).unwrap();
        let h = subgroup_closure(&g, &[rot]).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.is_normal());
        assert_eq!(h.transversal().len(), 2);
        let hg = h.as_group();
        hg.validate(0).unwrap();
        assert!(hg.is_abelian());
    }

    #[test]
    fn trivial_subgroup() {
        let g = Arc::new(builtin("sl23").unwrap());
        let h = subgroup_closure(&g, &[0]).unwrap();
        assert_eq!(h.members(), &[0]);
        assert_eq!(h.transversal().len(), g.order());
        assert!(h.is_normal());
        assert_eq!(h.as_group().order(), 1);
    }

    #[test]
    fn reflection_subgroup_is_not_normal() {
        let g = Arc::new(builtin("dihedral:8").unwrap());
        let refl = g.generator_witness()[1];
        let h = subgroup_closure(&g, &[refl]).unwrap();
        assert_eq!(h.order(), 2);
        assert!(!h.is_normal());
        // left cosets partition G
        let mut seen = vec![false; g.order()];
        for &t in h.transversal() {
            for &m in h.members() {
                assert!(!std::mem::replace(&mut seen[g.mul(t, m)], true));
            }
        }
    }

    #[test]
    fn base_of_remark2_group() {
        let g = Arc::new(builtin("remark2:2").unwrap());
        let h = subgroup_closure(&g, &g.generator_witness()[..2]).unwrap();
        assert_eq!(h.order(), 16);
        assert!(h.is_normal());
        assert!(h.as_group().is_abelian());
    }

    #[test]
    fn member_set_validation() {
        let g = Arc::new(builtin("cyclic:6").unwrap());
        assert!(Subgroup::from_member_set(&g, vec![0, 1]).is_err());
        let x = g.generator_witness()[0];
        let three: Vec<usize> = (0..3).map(|k| g.pow(x, 2 * k)).collect();
        let h = Subgroup::from_member_set(&g, three).unwrap();
        assert_eq!(h.order(), 3);
        assert!(subgroup_closure(&g, &[99]).is_err());
    }
}
