// Corpus files compiled into the library. Internal header.
#pragma once

#include <string_view>
#include <vector>

namespace lefschetz::detail {

struct EmbeddedFile {
    std::string_view name;
    std::string_view content;
};

const std::vector<EmbeddedFile>& embedded_corpus();

}  // namespace lefschetz::detail
