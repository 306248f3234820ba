//! Half-arc-transitive graphs of valency four: permutation groups, graph
//! families, orientation analysis and 5-cycle structure.

pub mod families;
pub mod graphcore;
pub mod perm;
pub mod psl2;
pub mod hatcore;
pub mod pentagon;
pub mod autsearch;
pub mod report;
pub mod verify;
