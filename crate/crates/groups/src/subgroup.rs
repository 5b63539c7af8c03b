//! Subgroups as lazily closed, sorted element sets.

use std::cell::OnceCell;
use std::collections::{HashMap, VecDeque};
use std::rc::Rc;

use crate::error::{Error, Result};
use crate::group::{bfs_closure_raw, ElemId, GroupRef};

/// A subgroup of a fixed parent group, described by generators with a lazily
/// computed sorted element set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: GroupRef,
    generators: Vec<ElemId>,
    elements: OnceCell<Vec<ElemId>>,
}

impl Subgroup {
    pub fn new(parent: &GroupRef, gens: &[ElemId]) -> Result<Self> {
        for &g in gens {
            if g as usize >= parent.order() {
                return Err(Error::NoSuchElement(g));
            }
        }
        let mut generators: Vec<ElemId> =
            gens.iter().copied().filter(|&g| g != parent.identity()).collect();
        generators.sort_unstable();
        generators.dedup();
        Ok(Subgroup { parent: Rc::clone(parent), generators, elements: OnceCell::new() })
    }

    pub fn trivial(parent: &GroupRef) -> Self {
        Subgroup { parent: Rc::clone(parent), generators: Vec::new(), elements: OnceCell::new() }
    }

    pub fn whole(parent: &GroupRef) -> Self {
        Subgroup::new(parent, parent.generators()).expect("group generators are valid ids")
    }

    /// Subgroup from an already closed element set. The caller guarantees
    /// closure; generators are re-derived greedily from the least ids.
    pub(crate) fn from_elements(parent: &GroupRef, mut els: Vec<ElemId>) -> Self {
        els.sort_unstable();
        els.dedup();
        let gens = reduce_from_sorted(parent, &els);
        let sub = Subgroup {
            parent: Rc::clone(parent),
            generators: gens,
            elements: OnceCell::new(),
        };
        debug_assert_eq!(bfs_closure_raw(parent, &sub.generators), els);
        sub.elements.set(els).expect("fresh cell");
        sub
    }

    pub fn parent(&self) -> &GroupRef {
        &self.parent
    }

    pub fn generators(&self) -> &[ElemId] {
        &self.generators
    }

    /// Sorted element ids; computed once by breadth-first closure.
    pub fn elements(&self) -> &[ElemId] {
        self.elements.get_or_init(|| {
            let els = bfs_closure_raw(&self.parent, &self.generators);
            debug_assert!(self.parent.order().is_multiple_of(els.len()));
            els
        })
    }

    pub fn order(&self) -> usize {
        self.elements().len()
    }

    pub fn contains(&self, g: ElemId) -> bool {
        self.elements().binary_search(&g).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent.order()
    }

    /// Element-set equality.
    pub fn same_as(&self, other: &Subgroup) -> bool {
        self.assert_same_parent(other);
        self.elements() == other.elements()
    }

    /// True when every generator of self lies in other.
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.assert_same_parent(other);
        self.generators.iter().all(|&g| other.contains(g))
    }

    /// True when conjugation by g maps this subgroup onto itself.
    pub fn normalized_by(&self, g: ElemId) -> bool {
        self.generators.iter().all(|&s| self.contains(self.parent.conj(g, s)))
    }

    /// True when every generator of the ambient subgroup normalizes self.
    /// Only meaningful when self is contained in the ambient subgroup.
    pub fn is_normal_in(&self, ambient: &Subgroup) -> bool {
        self.assert_same_parent(ambient);
        ambient.generators.iter().all(|&a| self.normalized_by(a))
    }

    /// Subgroup generated by both element sets.
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        self.assert_same_parent(other);
        let mut gens = self.generators.clone();
        gens.extend(&other.generators);
        Subgroup::new(&self.parent, &gens).expect("ids come from the same parent")
    }

    /// Set intersection; always a subgroup.
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        self.assert_same_parent(other);
        let (a, b) = (self.elements(), other.elements());
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        Subgroup::from_elements(&self.parent, out)
    }

    /// g S g^(-1).
    pub fn conjugate_by(&self, g: ElemId) -> Subgroup {
        let gens: Vec<ElemId> =
            self.generators.iter().map(|&s| self.parent.conj(g, s)).collect();
        Subgroup::new(&self.parent, &gens).expect("conjugates are valid ids")
    }

    /// Greedy minimal-ish generating set: scan elements in ascending id order
    /// and keep each one not yet generated.
    pub fn reduce_generators(&self) -> Vec<ElemId> {
        reduce_from_sorted(&self.parent, self.elements())
    }

    fn assert_same_parent(&self, other: &Subgroup) {
        assert!(
            Rc::ptr_eq(&self.parent, &other.parent),
            "subgroups belong to different parent groups"
        );
    }
}

fn reduce_from_sorted(parent: &GroupRef, els: &[ElemId]) -> Vec<ElemId> {
    let mut gens: Vec<ElemId> = Vec::new();
    let mut closed = vec![parent.identity()];
    for &x in els {
        if closed.binary_search(&x).is_ok() {
            continue;
        }
        gens.push(x);
        closed = bfs_closure_raw(parent, &gens);
        if closed.len() == els.len() {
            break;
        }
    }
    gens
}

/// Sorted closure of a generating set; free-function form of
/// [`Subgroup::elements`].
pub fn closure(parent: &GroupRef, gens: &[ElemId]) -> Result<Vec<ElemId>> {
    let sub = Subgroup::new(parent, gens)?;
    Ok(sub.elements().to_vec())
}

/// Every subgroup of the parent, found by breadth-first extension of known
/// subgroups with single elements. Sorted by (order, element set).
pub fn all_subgroups(parent: &GroupRef) -> Vec<Subgroup> {
    let mut seen: HashMap<Vec<ElemId>, ()> = HashMap::new();
    let trivial = Subgroup::trivial(parent);
    seen.insert(trivial.elements().to_vec(), ());
    let mut queue = VecDeque::from([trivial.clone()]);
    let mut found = vec![trivial];
    while let Some(sub) = queue.pop_front() {
        for x in parent.elements() {
            if sub.contains(x) {
                continue;
            }
            let mut gens = sub.generators().to_vec();
            gens.push(x);
            let bigger = Subgroup::new(parent, &gens).expect("ids are in range");
            let key = bigger.elements().to_vec();
            if seen.insert(key, ()).is_none() {
                queue.push_back(bigger.clone());
                found.push(bigger);
            }
        }
    }
    found.sort_by(|a, b| {
        (a.order(), a.elements()).cmp(&(b.order(), b.elements()))
    });
    found
}
