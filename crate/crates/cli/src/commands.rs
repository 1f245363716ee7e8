//! Command signatures shared by the parser and the dispatcher.

use std::fmt;

/// Kinds of declared values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Ring,
    Ideal,
    Module,
    Family,
    Matrix,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Ring => "ring",
            Kind::Ideal => "ideal",
            Kind::Module => "module",
            Kind::Family => "family",
            Kind::Matrix => "matrix",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArgKind {
    Int,
    Object(Kind),
    OptObject(Kind),
    /// `[lo, hi]`, optionally preceded by `in`.
    Window,
    /// A window that falls back to `--window` when omitted.
    OptWindow,
    Points,
    /// 1-based column set `(j, ...)`.
    Subset,
    /// A declared matrix or a literal.
    Matrix,
    Pluecker,
    Poly,
}

impl ArgKind {
    pub fn is_optional(self) -> bool {
        matches!(self, ArgKind::OptWindow | ArgKind::OptObject(_))
    }
}

use ArgKind::*;
use Kind::*;

pub struct CommandSpec {
    pub name: &'static str,
    pub args: &'static [ArgKind],
    /// Library entry points the command exercises.
    pub engine: &'static [&'static str],
}

pub const COMMANDS: &[CommandSpec] = &[
    CommandSpec { name: "gb", args: &[Object(Ideal)], engine: &["groebner_basis"] },
    CommandSpec { name: "nf", args: &[Object(Ideal), Poly], engine: &["GroebnerBasis::normal_form", "GroebnerBasis::contains"] },
    CommandSpec { name: "syz", args: &[Object(Ideal)], engine: &["syzygies"] },
    CommandSpec { name: "intersect", args: &[Object(Ideal), Object(Ideal)], engine: &["ideal_intersection"] },
    CommandSpec { name: "colon", args: &[Object(Ideal), Object(Ideal)], engine: &["colon"] },
    CommandSpec { name: "saturate", args: &[Object(Ideal), Object(Ideal)], engine: &["saturation"] },
    CommandSpec { name: "present", args: &[Object(Module)], engine: &["PresentedModule::minimal_presentation"] },
    CommandSpec { name: "resolve", args: &[Object(Module)], engine: &["minimal_free_resolution"] },
    CommandSpec { name: "betti", args: &[Object(Module)], engine: &["betti_table"] },
    CommandSpec { name: "pd", args: &[Object(Module)], engine: &["projective_dimension"] },
    CommandSpec { name: "hilbert_series", args: &[Object(Module)], engine: &["hilbert_series"] },
    CommandSpec { name: "hilbert_poly", args: &[Object(Module)], engine: &["hilbert_polynomial"] },
    CommandSpec { name: "krull", args: &[Object(Module)], engine: &["krull_dimension"] },
    CommandSpec { name: "dims", args: &[Object(Module), OptWindow], engine: &["PresentedModule::graded_dims"] },
    CommandSpec { name: "ext", args: &[Int, Object(Module), Object(Module), OptWindow], engine: &["ext_module"] },
    CommandSpec { name: "tor", args: &[Int, Object(Module), Object(Module), OptWindow], engine: &["tor_module"] },
    CommandSpec { name: "tensor", args: &[Object(Module), Object(Module), OptWindow], engine: &["tensor_product"] },
    CommandSpec { name: "hom", args: &[Object(Module), Object(Module), OptWindow], engine: &["hom_module"] },
    CommandSpec { name: "h0loc", args: &[Object(Ideal), Object(Module), OptWindow], engine: &["h0_local"] },
    CommandSpec { name: "localcoh", args: &[Int, Object(Ideal), Object(Module), OptWindow], engine: &["local_cohomology_dims"] },
    CommandSpec { name: "depth", args: &[Object(Ideal), Object(Module)], engine: &["depth", "ext_depth", "is_regular_sequence"] },
    CommandSpec { name: "nzd", args: &[Object(Module), Poly], engine: &["is_nonzerodivisor"] },
    CommandSpec { name: "cm_test", args: &[Object(Module)], engine: &["cm_test"] },
    CommandSpec { name: "mv_check", args: &[Object(Ideal), Object(Ideal), Object(Module), Int, OptWindow], engine: &["mayer_vietoris_check"] },
    CommandSpec { name: "local_duality", args: &[Object(Module), Int, OptWindow], engine: &["local_duality_defect"] },
    CommandSpec { name: "sheafcoh", args: &[Object(Module), Int, Int], engine: &["sheaf_cohomology_dim"] },
    CommandSpec { name: "sheaf_table", args: &[Object(Module), OptWindow], engine: &["sheaf_cohomology_table", "hilbert_polynomial"] },
    CommandSpec { name: "serre_defect", args: &[Object(Module), Int, Int], engine: &["serre_duality_defect", "serre_dual_dim"] },
    CommandSpec { name: "regularity", args: &[Object(Module)], engine: &["regularity", "betti_table"] },
    CommandSpec { name: "is_regular", args: &[Object(Module), Int], engine: &["is_m_regular"] },
    CommandSpec { name: "reg_props", args: &[Object(Module), Int, Int], engine: &["regularity_properties_check"] },
    CommandSpec { name: "global_sections", args: &[Object(Module), OptWindow], engine: &["global_sections_module"] },
    CommandSpec { name: "flat_test", args: &[Object(Family)], engine: &["flat_over_line"] },
    CommandSpec { name: "fiber_profile", args: &[Object(Family), Points], engine: &["fiber_hilbert_profile"] },
    CommandSpec { name: "fiber_euler", args: &[Object(Family), Int, Points], engine: &["fiber_euler_characteristics", "torsion_free_at"] },
    CommandSpec { name: "hypersurface_phi", args: &[Int, Int], engine: &["hypersurface_hilbert_polynomial"] },
    CommandSpec { name: "pluecker", args: &[ArgKind::Matrix], engine: &["pluecker"] },
    CommandSpec { name: "pluecker_check", args: &[Pluecker], engine: &["pluecker_relations_residual"] },
    CommandSpec { name: "chart", args: &[ArgKind::Matrix, Subset], engine: &["chart_transition"] },
];

pub fn lookup(name: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.name == name)
}

pub fn signature(name: &str) -> Option<&'static [ArgKind]> {
    lookup(name).map(|c| c.args)
}
