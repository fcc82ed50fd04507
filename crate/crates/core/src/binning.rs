use serde::{Deserialize, Serialize};

/// Geometric bins over non-negative integer degrees. Degree 0 has its own
/// bin; degree `d >= 1` lands in bin `1 + floor(bins_per_decade * log10 d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBinning {
    pub bins_per_decade: u32,
}

impl Default for DegreeBinning {
    fn default() -> Self {
        DegreeBinning {
            bins_per_decade: 10,
        }
    }
}

/// Observed contents of one degree bin.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BinOccupancy {
    pub bin: usize,
    pub degree_min: usize,
    pub degree_max: usize,
    pub nodes: usize,
}

impl DegreeBinning {
    pub fn new(bins_per_decade: u32) -> Self {
        assert!(bins_per_decade >= 1, "bins_per_decade must be at least 1");
        DegreeBinning { bins_per_decade }
    }

    pub fn bin_of(&self, degree: usize) -> usize {
        if degree == 0 {
            return 0;
        }
        let x = self.bins_per_decade as f64 * (degree as f64).log10();
        // The nudge keeps exact powers of ten in the bin they open.
        1 + (x + 1e-9).floor() as usize
    }

    /// Bin index for every node.
    pub fn assign(&self, degrees: &[usize]) -> Vec<usize> {
        degrees.iter().map(|&d| self.bin_of(d)).collect()
    }

    /// Non-empty bins in ascending order.
    pub fn occupancy(&self, degrees: &[usize]) -> Vec<BinOccupancy> {
        let mut bins: Vec<BinOccupancy> = Vec::new();
        let mut sorted = degrees.to_vec();
        sorted.sort_unstable();
        for d in sorted {
            let bin = self.bin_of(d);
            match bins.last_mut() {
                Some(last) if last.bin == bin => {
                    last.degree_max = d;
                    last.nodes += 1;
                }
                _ => bins.push(BinOccupancy {
                    bin,
                    degree_min: d,
                    degree_max: d,
                    nodes: 1,
                }),
            }
        }
        bins
    }
}
