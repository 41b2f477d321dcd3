#include "tmt/error.hpp"

namespace tmt {

const char* errc_name(errc c) {
  switch (c) {
    case errc::invalid_index: return "InvalidIndex";
    case errc::invalid_rank: return "InvalidRank";
    case errc::rank_mismatch: return "RankMismatch";
    case errc::too_large: return "TooLarge";
    case errc::parse_error: return "ParseError";
    case errc::bad_label: return "BadLabel";
    case errc::invalid_word: return "InvalidWord";
    case errc::label_mismatch: return "LabelMismatch";
    case errc::bad_vertex_labels: return "BadVertexLabels";
    case errc::not_applicable: return "NotApplicable";
    case errc::boundary_mismatch: return "BoundaryMismatch";
    case errc::shape_error: return "ShapeError";
    case errc::no_convergence: return "NoConvergence";
    case errc::provably_empty: return "ProvablyEmpty";
    case errc::not_on_variety: return "NotOnVariety";
    case errc::unsupported: return "Unsupported";
    case errc::out_of_alcove: return "OutOfAlcove";
    case errc::unsupported_chamber: return "UnsupportedChamber";
    case errc::bad_multiplicity: return "BadMultiplicity";
    case errc::not_in_class: return "NotInClass";
    case errc::base_mismatch: return "BaseMismatch";
    case errc::reducible: return "Reducible";
    case errc::not_eliminable: return "NotEliminable";
    case errc::not_a_link: return "NotALink";
    case errc::io_error: return "IoError";
  }
  return "Error";
}

}  // namespace tmt
