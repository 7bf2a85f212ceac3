use std::collections::HashMap;

use thiserror::Error;

pub type ObjectId = u32;
pub type MorphId = u32;

const NONE: MorphId = MorphId::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("object {0} out of range")]
    UnknownObject(ObjectId),
    #[error("morphism id {0} out of range")]
    UnknownMorphism(MorphId),
    #[error("morphism name `{0}` used twice in the same hom-set")]
    DuplicateName(String),
    #[error("no morphism named `{name}` in hom({from}, {to})")]
    UnknownName {
        name: String,
        from: ObjectId,
        to: ObjectId,
    },
    #[error("object {0} has no identity")]
    MissingIdentity(ObjectId),
    #[error("identity for object {0} is not an endomorphism of it")]
    BadIdentity(ObjectId),
    #[error("`{h} = {g} . {f}` has mismatched endpoints")]
    BadComposite { h: String, g: String, f: String },
    #[error("`{g} . {f}` given two different values")]
    ConflictingComposite { g: String, f: String },
    #[error("composite `{g} . {f}` is not defined")]
    MissingComposite { g: String, f: String },
    #[error("unit law fails for `{0}`")]
    UnitLaw(String),
    #[error("associativity fails for `{h} . {g} . {f}`")]
    Associativity { h: String, g: String, f: String },
}

/// A finite category with a dense composition table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCategory {
    name: String,
    objects: usize,
    names: Vec<String>,
    source: Vec<ObjectId>,
    target: Vec<ObjectId>,
    hom: Vec<Vec<MorphId>>,
    identity: Vec<MorphId>,
    /// `compose[g * m + f] = g ∘ f`, or `NONE` when not composable
    compose: Vec<MorphId>,
}

/// Incremental construction; identity composites are filled in by `build`.
#[derive(Debug, Clone)]
pub struct CategoryBuilder {
    name: String,
    objects: usize,
    names: Vec<String>,
    source: Vec<ObjectId>,
    target: Vec<ObjectId>,
    identity: Vec<Option<MorphId>>,
    compose: HashMap<(MorphId, MorphId), MorphId>,
}

impl CategoryBuilder {
    pub fn new(name: impl Into<String>, objects: usize) -> CategoryBuilder {
        CategoryBuilder {
            name: name.into(),
            objects,
            names: Vec::new(),
            source: Vec::new(),
            target: Vec::new(),
            identity: vec![None; objects],
            compose: HashMap::new(),
        }
    }

    fn check_object(&self, a: ObjectId) -> Result<(), CategoryError> {
        if (a as usize) < self.objects {
            Ok(())
        } else {
            Err(CategoryError::UnknownObject(a))
        }
    }

    pub fn morphism(
        &mut self,
        name: impl Into<String>,
        source: ObjectId,
        target: ObjectId,
    ) -> Result<MorphId, CategoryError> {
        self.check_object(source)?;
        self.check_object(target)?;
        let name = name.into();
        if self.find(&name, source, target).is_some() {
            return Err(CategoryError::DuplicateName(name));
        }
        self.names.push(name);
        self.source.push(source);
        self.target.push(target);
        Ok((self.names.len() - 1) as MorphId)
    }

    pub fn find(&self, name: &str, source: ObjectId, target: ObjectId) -> Option<MorphId> {
        (0..self.names.len())
            .find(|&i| self.names[i] == name && self.source[i] == source && self.target[i] == target)
            .map(|i| i as MorphId)
    }

    /// Looks a morphism up by name alone; first match in id order.
    pub fn find_any(&self, name: &str) -> Option<MorphId> {
        self.names.iter().position(|n| n == name).map(|i| i as MorphId)
    }

    pub fn source_of(&self, f: MorphId) -> ObjectId {
        self.source[f as usize]
    }

    pub fn target_of(&self, f: MorphId) -> ObjectId {
        self.target[f as usize]
    }

    fn check_morphism(&self, f: MorphId) -> Result<(), CategoryError> {
        if (f as usize) < self.names.len() {
            Ok(())
        } else {
            Err(CategoryError::UnknownMorphism(f))
        }
    }

    pub fn identity(&mut self, a: ObjectId, f: MorphId) -> Result<(), CategoryError> {
        self.check_object(a)?;
        self.check_morphism(f)?;
        if self.source[f as usize] != a || self.target[f as usize] != a {
            return Err(CategoryError::BadIdentity(a));
        }
        self.identity[a as usize] = Some(f);
        Ok(())
    }

    /// Records `h = g ∘ f`.
    pub fn compose(&mut self, h: MorphId, g: MorphId, f: MorphId) -> Result<(), CategoryError> {
        for x in [h, g, f] {
            self.check_morphism(x)?;
        }
        let (hu, gu, fu) = (h as usize, g as usize, f as usize);
        if self.target[fu] != self.source[gu]
            || self.source[hu] != self.source[fu]
            || self.target[hu] != self.target[gu]
        {
            return Err(CategoryError::BadComposite {
                h: self.names[hu].clone(),
                g: self.names[gu].clone(),
                f: self.names[fu].clone(),
            });
        }
        match self.compose.insert((g, f), h) {
            Some(old) if old != h => Err(CategoryError::ConflictingComposite {
                g: self.names[gu].clone(),
                f: self.names[fu].clone(),
            }),
            _ => Ok(()),
        }
    }

    /// Validates totality, unit laws and associativity.
    pub fn build(mut self) -> Result<FiniteCategory, CategoryError> {
        let mut identity = Vec::with_capacity(self.objects);
        for a in 0..self.objects {
            identity.push(self.identity[a].ok_or(CategoryError::MissingIdentity(a as ObjectId))?);
        }
        let m = self.names.len();
        for f in 0..m as MorphId {
            let (s, t) = (self.source[f as usize], self.target[f as usize]);
            let (is, it) = (identity[s as usize], identity[t as usize]);
            for (g, ff) in [(f, is), (it, f)] {
                match self.compose.get(&(g, ff)) {
                    Some(&h) if h != f => return Err(CategoryError::UnitLaw(self.names[f as usize].clone())),
                    Some(_) => {}
                    None => {
                        self.compose.insert((g, ff), f);
                    }
                }
            }
        }
        let mut compose = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                if self.target[f] != self.source[g] {
                    continue;
                }
                let h = self.compose.get(&(g as MorphId, f as MorphId)).ok_or_else(|| {
                    CategoryError::MissingComposite {
                        g: self.names[g].clone(),
                        f: self.names[f].clone(),
                    }
                })?;
                compose[g * m + f] = *h;
            }
        }
        let n = self.objects;
        let mut hom = vec![Vec::new(); n * n];
        for f in 0..m {
            hom[self.source[f] as usize * n + self.target[f] as usize].push(f as MorphId);
        }
        let c = FiniteCategory {
            name: self.name,
            objects: n,
            names: self.names,
            source: self.source,
            target: self.target,
            hom,
            identity,
            compose,
        };
        c.check_associativity()?;
        Ok(c)
    }
}

impl FiniteCategory {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects
    }

    pub fn morphism_count(&self) -> usize {
        self.names.len()
    }

    pub fn morphism_name(&self, f: MorphId) -> &str {
        &self.names[f as usize]
    }

    pub fn source(&self, f: MorphId) -> ObjectId {
        self.source[f as usize]
    }

    pub fn target(&self, f: MorphId) -> ObjectId {
        self.target[f as usize]
    }

    pub fn hom(&self, a: ObjectId, b: ObjectId) -> &[MorphId] {
        &self.hom[a as usize * self.objects + b as usize]
    }

    pub fn identity(&self, a: ObjectId) -> MorphId {
        self.identity[a as usize]
    }

    pub fn is_identity(&self, f: MorphId) -> bool {
        self.identity[self.source(f) as usize] == f
    }

    /// `g ∘ f`, when `target(f) = source(g)`.
    pub fn compose(&self, g: MorphId, f: MorphId) -> Option<MorphId> {
        let h = self.compose[g as usize * self.names.len() + f as usize];
        (h != NONE).then_some(h)
    }

    /// Unchecked `g ∘ f`.
    #[inline]
    pub fn compose_raw(&self, g: MorphId, f: MorphId) -> MorphId {
        self.compose[g as usize * self.names.len() + f as usize]
    }

    pub fn find(&self, name: &str, a: ObjectId, b: ObjectId) -> Option<MorphId> {
        self.hom(a, b)
            .iter()
            .copied()
            .find(|&f| self.names[f as usize] == name)
    }

    pub fn is_thin(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }

    pub fn check_associativity(&self) -> Result<(), CategoryError> {
        let m = self.names.len() as MorphId;
        for f in 0..m {
            for g in 0..m {
                let Some(gf) = self.compose(g, f) else { continue };
                for h in 0..m {
                    let Some(hg) = self.compose(h, g) else { continue };
                    if self.compose(h, gf) != self.compose(hg, f) {
                        return Err(CategoryError::Associativity {
                            h: self.names[h as usize].clone(),
                            g: self.names[g as usize].clone(),
                            f: self.names[f as usize].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Re-checks every law over the full tables.
    pub fn check_laws(&self) -> Result<(), CategoryError> {
        for f in 0..self.names.len() as MorphId {
            let (s, t) = (self.source(f), self.target(f));
            if self.compose(f, self.identity(s)) != Some(f) || self.compose(self.identity(t), f) != Some(f)
            {
                return Err(CategoryError::UnitLaw(self.names[f as usize].clone()));
            }
            for g in 0..self.names.len() as MorphId {
                if let Some(h) = self.compose(g, f) {
                    if self.source(h) != s || self.target(h) != self.target(g) {
                        return Err(CategoryError::BadComposite {
                            h: self.names[h as usize].clone(),
                            g: self.names[g as usize].clone(),
                            f: self.names[f as usize].clone(),
                        });
                    }
                }
            }
        }
        self.check_associativity()
    }

    /// The opposite category on the same morphism ids.
    pub fn opposite(&self) -> FiniteCategory {
        let m = self.names.len();
        let n = self.objects;
        let mut compose = vec![NONE; m * m];
        for g in 0..m {
            for f in 0..m {
                compose[g * m + f] = self.compose[f * m + g];
            }
        }
        let mut hom = vec![Vec::new(); n * n];
        for a in 0..n {
            for b in 0..n {
                hom[a * n + b] = self.hom[b * n + a].clone();
            }
        }
        FiniteCategory {
            name: format!("{}-op", self.name),
            objects: n,
            names: self.names.clone(),
            source: self.target.clone(),
            target: self.source.clone(),
            hom,
            identity: self.identity.clone(),
            compose,
        }
    }

    /// Builder pre-filled with this category's data, for renaming or editing.
    pub fn to_builder(&self) -> CategoryBuilder {
        let mut b = CategoryBuilder::new(self.name.clone(), self.objects);
        for f in 0..self.names.len() {
            b.morphism(self.names[f].clone(), self.source[f], self.target[f]).unwrap();
        }
        for a in 0..self.objects {
            b.identity(a as ObjectId, self.identity[a]).unwrap();
        }
        let m = self.names.len();
        for g in 0..m {
            for f in 0..m {
                let h = self.compose[g * m + f];
                if h != NONE {
                    b.compose(h, g as MorphId, f as MorphId).unwrap();
                }
            }
        }
        b
    }

    pub fn with_name(mut self, name: impl Into<String>) -> FiniteCategory {
        self.name = name.into();
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow() -> FiniteCategory {
        let mut b = CategoryBuilder::new("arrow", 2);
        let i0 = b.morphism("id0", 0, 0).unwrap();
        let i1 = b.morphism("id1", 1, 1).unwrap();
        b.morphism("f", 0, 1).unwrap();
        b.identity(0, i0).unwrap();
        b.identity(1, i1).unwrap();
        b.build().unwrap()
    }

    #[test]
    fn identities_fill_composites() {
        let c = arrow();
        let f = c.find("f", 0, 1).unwrap();
        assert_eq!(c.compose(f, c.identity(0)), Some(f));
        assert_eq!(c.compose(c.identity(1), f), Some(f));
        assert_eq!(c.compose(f, f), None);
        assert!(c.is_thin());
        c.check_laws().unwrap();
    }

    #[test]
    fn missing_composite_rejected() {
        let mut b = CategoryBuilder::new("bad", 1);
        let i = b.morphism("1", 0, 0).unwrap();
        b.morphism("a", 0, 0).unwrap();
        b.identity(0, i).unwrap();
        assert!(matches!(b.build(), Err(CategoryError::MissingComposite { .. })));
    }

    #[test]
    fn non_associative_rejected() {
        // a.a = b, b.a = a, a.b = b: (a.a).b = b.b, a.(a.b) = a.b
        let mut b = CategoryBuilder::new("bad", 1);
        let i = b.morphism("1", 0, 0).unwrap();
        let x = b.morphism("a", 0, 0).unwrap();
        let y = b.morphism("b", 0, 0).unwrap();
        b.identity(0, i).unwrap();
        b.compose(y, x, x).unwrap();
        b.compose(x, y, x).unwrap();
        b.compose(y, x, y).unwrap();
        b.compose(i, y, y).unwrap();
        assert!(b.build().is_err());
    }

    #[test]
    fn opposite_swaps() {
        let c = arrow();
        let op = c.opposite();
        let f = c.find("f", 0, 1).unwrap();
        assert_eq!(op.source(f), 1);
        assert_eq!(op.hom(1, 0), &[f]);
        op.check_laws().unwrap();
        assert_eq!(op.opposite().hom(0, 1), c.hom(0, 1));
    }

    #[test]
    fn bad_identity_and_names() {
        let mut b = CategoryBuilder::new("x", 2);
        let f = b.morphism("f", 0, 1).unwrap();
        assert_eq!(b.identity(0, f), Err(CategoryError::BadIdentity(0)));
        assert_eq!(b.morphism("f", 0, 1), Err(CategoryError::DuplicateName("f".into())));
        assert_eq!(b.morphism("g", 0, 5), Err(CategoryError::UnknownObject(5)));
    }
}
