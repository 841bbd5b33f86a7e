#ifndef SDTK_ERRORS_HPP_
#define SDTK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace sdtk {

struct toolkit_error : std::runtime_error {
    explicit toolkit_error(const std::string& what) : std::runtime_error(what) {}
};

struct empty_subshift_error : toolkit_error {
    explicit empty_subshift_error(const std::string& what) : toolkit_error(what) {}
};

struct bad_word_error : toolkit_error {
    explicit bad_word_error(const std::string& what) : toolkit_error(what) {}
};

struct alphabet_mismatch_error : toolkit_error {
    explicit alphabet_mismatch_error(const std::string& what) : toolkit_error(what) {}
};

struct bad_metric_error : toolkit_error {
    explicit bad_metric_error(const std::string& what) : toolkit_error(what) {}
};

struct not_strongly_connected_error : toolkit_error {
    explicit not_strongly_connected_error(const std::string& what) : toolkit_error(what) {}
};

struct different_components_error : toolkit_error {
    explicit different_components_error(const std::string& what) : toolkit_error(what) {}
};

struct bad_delta_error : toolkit_error {
    explicit bad_delta_error(const std::string& what) : toolkit_error(what) {}
};

struct not_chain_transitive_error : toolkit_error {
    explicit not_chain_transitive_error(const std::string& what) : toolkit_error(what) {}
};

struct schedule_exhausted_error : toolkit_error {
    explicit schedule_exhausted_error(const std::string& what) : toolkit_error(what) {}
};

struct no_disjoint_cycles_error : toolkit_error {
    explicit no_disjoint_cycles_error(const std::string& what) : toolkit_error(what) {}
};

struct horizon_mismatch_error : toolkit_error {
    explicit horizon_mismatch_error(const std::string& what) : toolkit_error(what) {}
};

struct not_minimal_error : toolkit_error {
    explicit not_minimal_error(const std::string& what) : toolkit_error(what) {}
};

struct schema_error : toolkit_error {
    explicit schema_error(const std::string& what) : toolkit_error(what) {}
};

}  // namespace sdtk

#endif  // SDTK_ERRORS_HPP_
