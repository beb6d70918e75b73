use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use coxeter_core::classify::CriterionReport;
use coxeter_core::rootsystems::{ParabolicClass, RootSystem};

use crate::Caps;

/// Content address of a report set: the type, every class with its members,
/// the caps and seed, and the code version.
pub struct Key {
    w: String,
    digest: String,
    classes: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct Entry {
    version: String,
    digest: String,
    reports: Vec<CriterionReport>,
}

impl Key {
    pub fn new(rs: &RootSystem, classes: &[ParabolicClass], caps: &Caps) -> Self {
        let w = rs.coxeter_type().label();
        let mut h = Sha256::new();
        h.update(env!("CARGO_PKG_VERSION"));
        h.update(&w);
        for pc in classes {
            h.update(format!("|{}:{}:{:?}", pc.id, pc.label, pc.members));
        }
        h.update(format!(
            "|{} {} {} {} {} {:?}",
            caps.orbit_cap, caps.group_cap, caps.poset_cap, caps.refutation_bound, caps.seed, caps.d_rule
        ));
        let digest = format!("{:x}", h.finalize());
        Key { w, digest, classes: classes.iter().map(|pc| (pc.id, pc.label.clone())).collect() }
    }

    fn path(&self, dir: &Path) -> PathBuf {
        let name: String = self.w.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
        dir.join(format!("{name}-{}.json", &self.digest[..16]))
    }
}

/// Cached reports, or `None` when the file is missing, unreadable, from
/// another version, or does not describe exactly the requested classes.
pub fn load(dir: &Path, key: &Key) -> Option<Vec<CriterionReport>> {
    let text = fs::read_to_string(key.path(dir)).ok()?;
    let entry: Entry = serde_json::from_str(&text).ok()?;
    if entry.version != env!("CARGO_PKG_VERSION") || entry.digest != key.digest {
        return None;
    }
    let found: Vec<(usize, String)> = entry.reports.iter().map(|r| (r.class_id, r.label.clone())).collect();
    if found != key.classes || entry.reports.iter().any(|r| r.w_type != key.w) {
        return None;
    }
    Some(entry.reports)
}

pub fn store(dir: &Path, key: &Key, reports: &[CriterionReport]) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let entry =
        Entry { version: env!("CARGO_PKG_VERSION").to_string(), digest: key.digest.clone(), reports: reports.to_vec() };
    let text = serde_json::to_string(&entry).map_err(io::Error::other)?;
    let tmp = key.path(dir).with_extension("tmp");
    fs::write(&tmp, text)?;
    fs::rename(tmp, key.path(dir))
}
