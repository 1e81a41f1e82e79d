//! Name-indexed collections of boxed strategies.

use crate::error::{Error, Result};

/// Ordered map from a strategy name to a trait object.
pub struct Registry<T: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<T>)>,
}

impl<T: ?Sized> Registry<T> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds a strategy; a later registration under the same name replaces it.
    pub fn register(&mut self, name: &'static str, strategy: Box<T>) -> &mut Self {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = strategy,
            None => self.entries.push((name, strategy)),
        }
        self
    }

    pub fn with(mut self, name: &'static str, strategy: Box<T>) -> Self {
        self.register(name, strategy);
        self
    }

    pub fn get(&self, name: &str) -> Result<&T> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
                available: self.names().join(", "),
            })
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn kind(&self) -> &'static str {
        self.kind
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greet {
        fn greet(&self) -> String;
    }

    struct Fixed(&'static str);

    impl Greet for Fixed {
        fn greet(&self) -> String {
            self.0.to_string()
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut reg: Registry<dyn Greet> = Registry::new("greeter");
        reg.register("a", Box::new(Fixed("one")));
        reg.register("b", Box::new(Fixed("two")));
        reg.register("a", Box::new(Fixed("three")));
        assert_eq!(reg.names(), vec!["a", "b"]);
        assert_eq!(reg.get("a").unwrap().greet(), "three");
        let err = reg.get("c").err().unwrap().to_string();
        assert!(err.contains("greeter") && err.contains("a, b"), "{err}");
    }
}
