#include "mastercount/kernel/expr_parser.hpp"

namespace mastercount::kernel {

std::string caret_diagnostic(std::string_view text, const ParseError& e) {
    std::string out(text);
    out += "\n";
    out += std::string(std::min(e.position(), text.size()), ' ');
    out += "^ ";
    out += e.what();
    return out;
}

}  // namespace mastercount::kernel
