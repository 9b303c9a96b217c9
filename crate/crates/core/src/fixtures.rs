//! Stock frames and spaces used by the verification suites and tests.

use std::sync::Arc;

use crate::frame::Frame;
use crate::limits::Limits;
use crate::space::{sierpinski_space, LSet, Space};

/// Names of the stock frames, in suite order.
pub const FRAME_NAMES: [&str; 3] = ["F2", "F3", "D4"];

pub fn labels(items: &[&str]) -> Vec<String> {
    items.iter().map(|s| s.to_string()).collect()
}

/// The 2-chain `0 < 1`.
pub fn f2() -> Frame {
    Frame::chain(&["0", "1"]).expect("chain")
}

/// The 3-chain `0 < m < 1`.
pub fn f3() -> Frame {
    Frame::chain(&["0", "m", "1"]).expect("chain")
}

/// The diamond `0 < a, b < 1` with `a`, `b` incomparable.
pub fn d4() -> Frame {
    // 0, a, b, 1
    Frame::from_order(&["0", "a", "b", "1"], |i, j| i == j || i == 0 || j == 3).expect("diamond")
}

/// The pentagon `0 < a < c < 1`, `0 < b < 1`: a lattice that is not distributive.
pub fn n5_labels_and_order() -> (Vec<String>, Vec<Vec<bool>>) {
    let names = labels(&["0", "a", "b", "c", "1"]);
    let below: [&[usize]; 5] = [&[0], &[0, 1], &[0, 2], &[0, 1, 3], &[0, 1, 2, 3, 4]];
    let leq = (0..5).map(|i| (0..5).map(|j| below[j].contains(&i)).collect()).collect();
    (names, leq)
}

pub fn frame_by_name(name: &str) -> Option<Frame> {
    match name {
        "F2" => Some(f2()),
        "F3" => Some(f3()),
        "D4" => Some(d4()),
        _ => None,
    }
}

/// The stock family over a named frame: indiscrete spaces on 1 to 3
/// points, discrete spaces on 1 and 2 points, the Sierpinski space, and
/// for `F3` the space `(x, y, z)` generated by `(m, m, 1)`.
///
/// The one-point discrete space over `F3` is named `P3`; over `F2` it
/// coincides with the one-point indiscrete space and is omitted.
pub fn family(frame_name: &str) -> Option<Vec<(String, Arc<Space>)>> {
    let frame = Arc::new(frame_by_name(frame_name)?);
    let lim = Limits::default();
    let mut out = Vec::new();
    for (n, pts) in [(1, labels(&["a"])), (2, labels(&["a", "b"])), (3, labels(&["a", "b", "c"]))] {
        let s = Space::indiscrete(frame.clone(), pts).expect("indiscrete");
        out.push((format!("IND{n}_{frame_name}"), Arc::new(s)));
    }
    if frame.len() > 2 {
        let name = if frame_name == "F3" { "P3".to_string() } else { format!("DISC1_{frame_name}") };
        let s = Space::discrete(frame.clone(), labels(&["*"]), &lim).expect("discrete");
        out.push((name, Arc::new(s)));
    }
    let s = Space::discrete(frame.clone(), labels(&["a", "b"]), &lim).expect("discrete");
    out.push((format!("DISC2_{frame_name}"), Arc::new(s)));
    out.push((format!("LS_{frame_name}"), Arc::new(sierpinski_space(frame.clone()))));
    if frame_name == "F3" {
        let m = frame.element("m").expect("m");
        let mu = LSet::new(vec![m, m, frame.top()]);
        let s = Space::generated(frame.clone(), labels(&["x", "y", "z"]), vec![mu]).expect("generated");
        out.push(("XYZ".to_string(), Arc::new(s)));
    }
    Some(out)
}

/// Every stock space across all stock frames.
pub fn all_spaces() -> Vec<(String, Arc<Space>)> {
    FRAME_NAMES.iter().flat_map(|n| family(n).expect("stock frame")).collect()
}

/// Looks up a stock space by name.
pub fn space_by_name(name: &str) -> Option<Arc<Space>> {
    all_spaces().into_iter().find(|(n, _)| n == name).map(|(_, s)| s)
}
