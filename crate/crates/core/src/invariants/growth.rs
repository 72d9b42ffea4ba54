use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::braid::ClosedBraidLink;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::skein::{recognize, RootData};

use super::tv::{tv_link_complement, tv_real};
use super::{InvariantOptions, GENERIC_GROWTH_MAX_R};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthEntry {
    pub r: u32,
    pub tv: f64,
    /// (2π/r)·log TV_r, absent when TV_r = 0.
    pub y: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GrowthSeries {
    pub entries: Vec<GrowthEntry>,
    pub volume: Option<f64>,
}

impl GrowthSeries {
    pub fn ys(&self) -> Vec<f64> {
        self.entries.iter().filter_map(|e| e.y).collect()
    }

    pub fn max_y(&self) -> Option<f64> {
        self.ys().into_iter().reduce(f64::max)
    }

    pub fn last_y(&self) -> Option<f64> {
        self.entries.last().and_then(|e| e.y)
    }

    /// y_r − volume per entry.
    pub fn gaps(&self) -> Option<Vec<Option<f64>>> {
        let v = self.volume?;
        Some(self.entries.iter().map(|e| e.y.map(|y| y - v)).collect())
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.entries.windows(2).all(|w| match (w[0].y, w[1].y) {
            (Some(a), Some(b)) => b > a,
            _ => false,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(if self.volume.is_some() { "r,tv,y,gap\n" } else { "r,tv,y\n" });
        for e in &self.entries {
            let y = e.y.map(super::sig12).unwrap_or_default();
            out.push_str(&format!("{},{},{}", e.r, super::sig12(e.tv), y));
            if let Some(v) = self.volume {
                out.push(',');
                out.push_str(&e.y.map(|y| super::sig12(y - v)).unwrap_or_default());
            }
            out.push('\n');
        }
        out
    }
}

fn check_r_list(r_list: &[u32]) -> Result<()> {
    for &r in r_list {
        crate::skein::root::check_level(r as i64)?;
    }
    if r_list.is_empty() || r_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parse("r list must be non-empty and strictly ascending".into()));
    }
    Ok(())
}

/// TV_r and y_r for each r. Levels above 31 need a registered fast path
/// unless `force_generic` is set.
pub fn growth_series<S: Scalar>(
    link: &ClosedBraidLink,
    r_list: &[u32],
    volume: Option<f64>,
    opts: &InvariantOptions,
) -> Result<GrowthSeries> {
    check_r_list(r_list)?;
    let fast = opts.use_fast_path && link.component_count() == 1 && recognize(&link.braid).is_some();
    if !fast && !opts.force_generic {
        if let Some(&r) = r_list.iter().find(|&&r| r > GENERIC_GROWTH_MAX_R) {
            return Err(Error::FastPathRequired(format!(
                "growth at r = {r} > {GENERIC_GROWTH_MAX_R} needs a registered fast path or the override flag"
            )));
        }
    }
    let mut entries = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let root = RootData::<S>::new(r as i64)?;
        let tv = tv_real(&tv_link_complement(link, &root, opts)?)?;
        let y = (tv > 0.0).then(|| 2.0 * PI / r as f64 * tv.ln());
        entries.push(GrowthEntry { r, tv, y });
    }
    Ok(GrowthSeries { entries, volume })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DehnReport {
    pub kept_components: Vec<usize>,
    pub full: GrowthSeries,
    pub sublink: GrowthSeries,
    /// Whether the last estimates are ordered as sublink ≤ full.
    pub last_ordered: Option<bool>,
}

/// Growth series of a link and of the sublink keeping `keep`, side by side.
pub fn dehn_filling_compare<S: Scalar>(
    link: &ClosedBraidLink,
    keep: &[usize],
    r_list: &[u32],
    opts: &InvariantOptions,
) -> Result<DehnReport> {
    let sub = link.sublink(keep)?;
    let full = growth_series::<S>(link, r_list, None, opts)?;
    let sublink = if keep.len() == link.component_count() {
        full.clone()
    } else {
        growth_series::<S>(&sub, r_list, None, opts)?
    };
    let last_ordered = match (sublink.last_y(), full.last_y()) {
        (Some(a), Some(b)) => Some(a <= b),
        _ => None,
    };
    Ok(DehnReport { kept_components: keep.to_vec(), full, sublink, last_ordered })
}
