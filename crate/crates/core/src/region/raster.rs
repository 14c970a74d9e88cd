use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::{membership, RegionError, RegionSpec};
use crate::float;

const MAX_CELLS: usize = 25_000_000;

/// Axis-aligned rectangle `[re_min, re_max] × [im_min, im_max]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BBox {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl BBox {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self, RegionError> {
        let finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !finite || re_min >= re_max || im_min >= im_max {
            return Err(RegionError::InvalidGrid("bbox must be finite with min < max".into()));
        }
        Ok(Self { re_min, re_max, im_min, im_max })
    }

    /// Number of `(columns, rows)` at cell size `res`.
    fn dims(&self, res: f64) -> (usize, usize) {
        let count = |len: f64| float::ceil(len / res - 1e-9).max(1.0) as usize;
        (count(self.re_max - self.re_min), count(self.im_max - self.im_min))
    }
}

/// Connected components of the member cells of a raster of `D`.
///
/// Cells are indexed by `(col, row)` with row 0 at `im_min`; membership is
/// decided at cell centers. Label 0 means outside `D`, components are numbered
/// from 1 in row-major order of their first cell.
#[derive(Clone, Debug, PartialEq)]
pub struct ComponentMap {
    bbox: BBox,
    resolution: f64,
    cols: usize,
    rows: usize,
    labels: Vec<u32>,
    component_count: u32,
    star_id: u32,
    r_ray: f64,
    axis_row: usize,
}

impl ComponentMap {
    pub fn bbox(&self) -> BBox {
        self.bbox
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Row-major labels, row 0 first.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn component_count(&self) -> u32 {
        self.component_count
    }

    /// Label of `D★`.
    pub fn star_id(&self) -> u32 {
        self.star_id
    }

    /// Every axis-row cell right of `r_ray` lies in `D★`.
    pub fn r_ray(&self) -> f64 {
        self.r_ray
    }

    /// The row whose cells stand in for the real axis.
    pub fn axis_row(&self) -> usize {
        self.axis_row
    }

    pub fn label(&self, col: usize, row: usize) -> u32 {
        self.labels[row * self.cols + col]
    }

    pub fn cell_center(&self, col: usize, row: usize) -> Complex64 {
        Complex64::new(
            self.bbox.re_min + (col as f64 + 0.5) * self.resolution,
            self.bbox.im_min + (row as f64 + 0.5) * self.resolution,
        )
    }

    /// Cell containing `zeta`, if it lies in the box.
    pub fn cell_of(&self, zeta: Complex64) -> Option<(usize, usize)> {
        let c = float::floor((zeta.re - self.bbox.re_min) / self.resolution);
        let r = float::floor((zeta.im - self.bbox.im_min) / self.resolution);
        if c < 0.0 || r < 0.0 || c >= self.cols as f64 || r >= self.rows as f64 {
            return None;
        }
        Some((c as usize, r as usize))
    }

    /// Label of the cell containing `zeta`, `None` outside the box.
    pub fn label_at(&self, zeta: Complex64) -> Option<u32> {
        self.cell_of(zeta).map(|(c, r)| self.label(c, r))
    }

    /// Cell count per label, index 0 counting non-members.
    pub fn component_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.component_count as usize + 1];
        for &l in &self.labels {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Member cells with a non-member 4-neighbour: the sampled `∂D`.
    pub fn boundary_cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for row in 0..self.rows {
            for col in 0..self.cols {
                if self.label(col, row) == 0 {
                    continue;
                }
                let outside = self
                    .neighbours(col, row)
                    .into_iter()
                    .flatten()
                    .any(|(c, r)| self.label(c, r) == 0);
                if outside {
                    out.push((col, row));
                }
            }
        }
        out
    }

    fn neighbours(&self, col: usize, row: usize) -> [Option<(usize, usize)>; 4] {
        [
            col.checked_sub(1).map(|c| (c, row)),
            (col + 1 < self.cols).then_some((col + 1, row)),
            row.checked_sub(1).map(|r| (col, r)),
            (row + 1 < self.rows).then_some((col, row + 1)),
        ]
    }
}

/// Rasterizes `D` over `bbox`, labels its 4-connected components and locates
/// `D★` through the right end of the real axis.
pub fn find_star_component(
    spec: &RegionSpec,
    bbox: BBox,
    resolution: f64,
) -> Result<ComponentMap, RegionError> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(RegionError::InvalidGrid("resolution must be positive".into()));
    }
    if bbox.re_max <= 0.0 || bbox.im_min > 0.0 || bbox.im_max < 0.0 {
        return Err(RegionError::InvalidGrid(
            "bbox must contain a segment of the positive real axis".into(),
        ));
    }
    let (cols, rows) = bbox.dims(resolution);
    if cols.saturating_mul(rows) > MAX_CELLS {
        return Err(RegionError::InvalidGrid("too many cells".into()));
    }
    let mut map = ComponentMap {
        bbox,
        resolution,
        cols,
        rows,
        labels: vec![0; cols * rows],
        component_count: 0,
        star_id: 0,
        r_ray: 0.0,
        axis_row: (float::floor(-bbox.im_min / resolution) as usize).min(rows - 1),
    };
    let mut member = vec![false; cols * rows];
    for row in 0..rows {
        for col in 0..cols {
            member[row * cols + col] = membership(spec, map.cell_center(col, row));
        }
    }
    let mut stack = Vec::new();
    for start in 0..cols * rows {
        if !member[start] || map.labels[start] != 0 {
            continue;
        }
        map.component_count += 1;
        let id = map.component_count;
        map.labels[start] = id;
        stack.push(start);
        while let Some(cell) = stack.pop() {
            for (c, r) in map.neighbours(cell % cols, cell / cols).into_iter().flatten() {
                let k = r * cols + c;
                if member[k] && map.labels[k] == 0 {
                    map.labels[k] = id;
                    stack.push(k);
                }
            }
        }
    }
    let row = map.axis_row;
    let positive = |col: usize| map.cell_center(col, row).re > 0.0;
    if !positive(cols - 1) || map.label(cols - 1, row) == 0 {
        return Err(RegionError::RayNotFound { re_max: bbox.re_max });
    }
    let mut first = cols - 1;
    while first > 0 && positive(first - 1) && map.label(first - 1, row) != 0 {
        first -= 1;
    }
    map.star_id = map.label(cols - 1, row);
    map.r_ray = (map.cell_center(first, row).re - 0.5 * resolution).max(0.0);
    Ok(map)
}
