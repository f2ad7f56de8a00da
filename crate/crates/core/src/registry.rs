use crate::error::{Error, Result};

/// Named strategies behind a common trait object, kept in registration
/// order.
pub struct Registry<S: ?Sized> {
    kind: &'static str,
    entries: Vec<(&'static str, Box<S>)>,
}

impl<S: ?Sized> Registry<S> {
    pub fn new(kind: &'static str) -> Self {
        Self {
            kind,
            entries: Vec::new(),
        }
    }

    /// Adds a strategy; a later registration under the same name replaces
    /// the earlier one.
    pub fn register(&mut self, name: &'static str, strategy: Box<S>) {
        match self.entries.iter_mut().find(|(n, _)| *n == name) {
            Some(slot) => slot.1 = strategy,
            None => self.entries.push((name, strategy)),
        }
    }

    pub fn get(&self, name: &str) -> Result<&S> {
        self.entries
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, s)| s.as_ref())
            .ok_or_else(|| Error::UnknownStrategy {
                kind: self.kind,
                name: name.to_string(),
            })
    }

    /// First registered strategy accepted by `pred`.
    pub fn find(&self, pred: impl Fn(&S) -> bool) -> Option<&S> {
        self.entries
            .iter()
            .map(|(_, s)| s.as_ref())
            .find(|s| pred(s))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|(n, _)| *n).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &S)> {
        self.entries.iter().map(|(n, s)| (*n, s.as_ref()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    trait Greet {
        fn hello(&self) -> String;
    }

    struct En;
    struct De;

    impl Greet for En {
        fn hello(&self) -> String {
            "hello".into()
        }
    }

    impl Greet for De {
        fn hello(&self) -> String {
            "hallo".into()
        }
    }

    #[test]
    fn lookup_and_replace() {
        let mut reg: Registry<dyn Greet> = Registry::new("greeter");
        reg.register("en", Box::new(En));
        reg.register("de", Box::new(En));
        reg.register("de", Box::new(De));
        assert_eq!(reg.names(), vec!["en", "de"]);
        assert_eq!(reg.get("de").unwrap().hello(), "hallo");
        assert_eq!(
            reg.get("fr").err(),
            Some(Error::UnknownStrategy {
                kind: "greeter",
                name: "fr".into()
            })
        );
        assert_eq!(
            reg.find(|g| g.hello().starts_with('h')).unwrap().hello(),
            "hello"
        );
    }
}
