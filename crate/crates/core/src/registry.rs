//! Conflict-aware catalog of the compatibility functions.
//!
//! The compatibility layer re-implements MATLAB/Octave functions under their
//! original names, and some of those names (`max`, `min`, `find`, `strcat`)
//! are already taken by the target language's base namespace. The registry
//! models the export policy that keeps converted code minimally invasive:
//! a conflicting name is only resolved to the compatibility implementation
//! after its module has been imported explicitly; non-conflicting names are
//! exported unconditionally.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// The module a compatibility function belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum ModuleTag {
    /// Numeric reductions and matrix helpers.
    MathTools,
    /// String construction and formatting.
    StringTools,
    /// Thresholding, labeling and intensity scaling.
    ImageTools,
    /// Helpers with no MATLAB/Octave analogue, such as the source converter.
    Support,
}

impl ModuleTag {
    /// All module tags, in a fixed order.
    pub const ALL: [ModuleTag; 4] = [
        ModuleTag::MathTools,
        ModuleTag::StringTools,
        ModuleTag::ImageTools,
        ModuleTag::Support,
    ];

    /// The tag's canonical name.
    pub fn name(self) -> &'static str {
        match self {
            ModuleTag::MathTools => "MathTools",
            ModuleTag::StringTools => "StringTools",
            ModuleTag::ImageTools => "ImageTools",
            ModuleTag::Support => "Support",
        }
    }
}

impl core::fmt::Display for ModuleTag {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.name())
    }
}

/// Registry record for one compatibility function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct RegistryEntry {
    /// Owning module.
    pub module_tag: ModuleTag,
    /// Whether the name collides with the target's base namespace.
    pub conflicts_with_base: bool,
}

/// Outcome of looking a name up in the registry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Resolution {
    /// The compatibility function is in scope.
    CompatExported,
    /// The name conflicts with the base namespace; the named module must be
    /// imported before the compatibility function takes over.
    CompatRequiresImport(ModuleTag),
    /// The name is not a registered compatibility function.
    NotFound,
}

impl core::fmt::Display for Resolution {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Resolution::CompatExported => f.write_str("CompatExported"),
            Resolution::CompatRequiresImport(tag) => write!(f, "CompatRequiresImport({tag})"),
            Resolution::NotFound => f.write_str("NotFound"),
        }
    }
}

/// Names that collide with the target's base namespace. This list is frozen
/// alongside the registry: `conflicts_with_base` is true exactly for these.
pub const BASE_CONFLICTS: [&str; 4] = ["max", "min", "find", "strcat"];

/// Catalog of compatibility functions with per-name conflict flags and the
/// set of modules the user has imported.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NamespaceRegistry {
    entries: BTreeMap<String, RegistryEntry>,
    imported: BTreeSet<ModuleTag>,
}

impl NamespaceRegistry {
    /// An empty registry with nothing imported.
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `name`; the conflict flag is derived from [`BASE_CONFLICTS`].
    /// Re-registering a name replaces its entry.
    pub fn register(&mut self, name: &str, module_tag: ModuleTag) {
        self.entries.insert(
            String::from(name),
            RegistryEntry {
                module_tag,
                conflicts_with_base: BASE_CONFLICTS.contains(&name),
            },
        );
    }

    /// Marks a module as imported, promoting its conflicting names.
    pub fn import(&mut self, tag: ModuleTag) {
        self.imported.insert(tag);
    }

    /// Copy of the registry with `tag` imported.
    pub fn with_import(&self, tag: ModuleTag) -> Self {
        let mut next = self.clone();
        next.import(tag);
        next
    }

    /// Copy of the registry with every module imported.
    pub fn with_all_imports(&self) -> Self {
        let mut next = self.clone();
        for tag in ModuleTag::ALL {
            next.import(tag);
        }
        next
    }

    /// Modules currently imported.
    pub fn imported_modules(&self) -> impl Iterator<Item = ModuleTag> + '_ {
        self.imported.iter().copied()
    }

    /// Registered names with their records, in name order.
    pub fn entries(&self) -> impl Iterator<Item = (&str, &RegistryEntry)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Record for one name.
    pub fn entry(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.get(name)
    }

    /// Number of registered functions.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// True when nothing is registered.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Resolves a name under the current import state.
    pub fn resolve(&self, name: &str) -> Resolution {
        match self.entries.get(name) {
            None => Resolution::NotFound,
            Some(entry) => {
                if entry.conflicts_with_base && !self.imported.contains(&entry.module_tag) {
                    Resolution::CompatRequiresImport(entry.module_tag)
                } else {
                    Resolution::CompatExported
                }
            }
        }
    }
}

/// The registry describing every compatibility function this project ships.
pub fn default_registry() -> NamespaceRegistry {
    let mut reg = NamespaceRegistry::new();
    // MathTools
    reg.register("max", ModuleTag::MathTools);
    reg.register("min", ModuleTag::MathTools);
    reg.register("find", ModuleTag::MathTools);
    // StringTools
    reg.register("strcat", ModuleTag::StringTools);
    reg.register("num2str", ModuleTag::StringTools);
    reg.register("sprintf", ModuleTag::StringTools);
    reg.register("printf", ModuleTag::StringTools);
    reg.register("disp", ModuleTag::StringTools);
    // ImageTools
    reg.register("imhist", ModuleTag::ImageTools);
    reg.register("graythresh", ModuleTag::ImageTools);
    reg.register("im2bw", ModuleTag::ImageTools);
    reg.register("mat2gray", ModuleTag::ImageTools);
    reg.register("bwlabel", ModuleTag::ImageTools);
    // Support
    reg.register("rosetta", ModuleTag::Support);
    reg
}
