// SPDX-License-Identifier: Apache-2.0

//! Bundled incremental claims of a Belgian non-life portfolio (10 x 10).

use crate::triangle::IncrementalTriangle;

const BELGIAN: [&[f64]; 10] = [
    &[
        135338126.0,
        90806681.0,
        68666715.0,
        55736215.0,
        46967279.0,
        35463367.0,
        30477244.0,
        24838121.0,
        18238489.0,
        14695083.0,
    ],
    &[
        125222434.0,
        89639978.0,
        70697962.0,
        58649114.0,
        46314227.0,
        41369299.0,
        34394512.0,
        26554172.0,
        24602209.0,
    ],
    &[
        136001521.0,
        91672958.0,
        78246269.0,
        62305193.0,
        49115673.0,
        36631598.0,
        30210729.0,
        29882359.0,
    ],
    &[
        135277744.0,
        103604885.0,
        78303084.0,
        61812683.0,
        48720135.0,
        39271861.0,
        32029697.0,
    ],
    &[143540778.0, 109316613.0, 79092473.0, 65603900.0, 51226270.0, 44408236.0],
    &[132095863.0, 88862933.0, 69269383.0, 57109637.0, 48818781.0],
    &[127299710.0, 92979311.0, 61379607.0, 50317305.0],
    &[120660241.0, 89469673.0, 71570718.0],
    &[134132283.0, 87016365.0],
    &[131918566.0],
];

pub fn belgian() -> IncrementalTriangle {
    IncrementalTriangle::new(BELGIAN.iter().map(|r| r.to_vec()).collect()).expect("bundled triangle is valid")
}
