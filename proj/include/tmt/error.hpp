#pragma once

#include <stdexcept>
#include <string>

namespace tmt {

// Domain error codes shared across modules.  CLI maps these to exit code 1.
enum class errc {
  invalid_index,
  invalid_rank,
  rank_mismatch,
  too_large,
  parse_error,
  bad_label,
  invalid_word,
  label_mismatch,
  bad_vertex_labels,
  not_applicable,
  boundary_mismatch,
  shape_error,
  no_convergence,
  provably_empty,
  not_on_variety,
  unsupported,
  out_of_alcove,
  unsupported_chamber,
  bad_multiplicity,
  not_in_class,
  base_mismatch,
  reducible,
  not_eliminable,
  not_a_link,
  io_error,
};

const char* errc_name(errc c);

class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  errc code() const { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

}  // namespace tmt
