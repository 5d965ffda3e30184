#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rcgen/annotation.hpp"

namespace rcgen {

// Instruction template collection, keyed by (task, variant). Templates are
// plain strings with <placeholder> tokens; multi-line templates use a literal
// "\n" escape so the resource stays one template per line.
class TemplateBank {
public:
    // The bank compiled into the binary.
    static const TemplateBank& builtin();

    // Same format as the builtin resource: "[task]" or "[task#variant]"
    // headers, one template per line, blank lines ignored.
    static TemplateBank parse(std::string_view text);
    static TemplateBank load_file(const std::string& path);

    bool has(Task task, int variant = 1) const;
    const std::vector<std::string>& bank(Task task, int variant = 1) const;  // throws ConfigError
    const std::map<std::pair<Task, int>, std::vector<std::string>>& banks() const { return banks_; }
    size_t template_count() const;

private:
    std::map<std::pair<Task, int>, std::vector<std::string>> banks_;
};

// Replaces every "<name>" placeholder with bindings.at(name). Throws
// TemplateError naming the placeholder when a binding is missing.
std::string instantiate_template(std::string_view tmpl,
                                 const std::map<std::string, std::string>& bindings);

// Turns the literal two-character "\n" escape into real newlines.
std::string render_newline_escapes(std::string_view text);

// Raw text of the builtin bank (defined in template_bank_data.cpp).
extern const char* const kBuiltinTemplateText;

}  // namespace rcgen
