#include "rcgen/templates.hpp"

#include <fstream>
#include <sstream>

#include "rcgen/errors.hpp"

namespace rcgen {

namespace {

// Header lines look like "[counting#2]" or "[relation_qa]".
bool parse_header(const std::string& line, Task& task, int& variant) {
    if (line.size() < 3 || line.front() != '[' || line.back() != ']') return false;
    std::string body = line.substr(1, line.size() - 2);
    variant = 1;
    if (auto hash = body.find('#'); hash != std::string::npos) {
        try {
            variant = std::stoi(body.substr(hash + 1));
        } catch (...) {
            return false;
        }
        body.resize(hash);
    }
    auto t = task_from_string(body);
    if (!t) return false;
    task = *t;
    return true;
}

}  // namespace

TemplateBank TemplateBank::parse(std::string_view text) {
    TemplateBank out;
    std::istringstream in{std::string(text)};
    std::string line;
    bool have_bank = false;
    Task task{};
    int variant = 1;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        Task t;
        int v;
        if (parse_header(line, t, v)) {
            task = t;
            variant = v;
            have_bank = true;
            continue;
        }
        if (!have_bank)
            throw ConfigError("template bank: line " + std::to_string(line_no) +
                              " appears before any [bank] header");
        out.banks_[{task, variant}].push_back(line);
    }
    return out;
}

TemplateBank TemplateBank::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open template bank file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str());
}

const TemplateBank& TemplateBank::builtin() {
    static const TemplateBank bank = parse(kBuiltinTemplateText);
    return bank;
}

bool TemplateBank::has(Task task, int variant) const {
    auto it = banks_.find({task, variant});
    return it != banks_.end() && !it->second.empty();
}

const std::vector<std::string>& TemplateBank::bank(Task task, int variant) const {
    auto it = banks_.find({task, variant});
    if (it == banks_.end() || it->second.empty())
        throw ConfigError(std::string("no templates for task ") + to_string(task) + "#" +
                          std::to_string(variant));
    return it->second;
}

size_t TemplateBank::template_count() const {
    size_t n = 0;
    for (const auto& [key, templates] : banks_) n += templates.size();
    return n;
}

std::string instantiate_template(std::string_view tmpl,
                                 const std::map<std::string, std::string>& bindings) {
    std::string out;
    out.reserve(tmpl.size());
    size_t i = 0;
    while (i < tmpl.size()) {
        if (tmpl[i] != '<') {
            out += tmpl[i++];
            continue;
        }
        size_t j = i + 1;
        while (j < tmpl.size() && ((tmpl[j] >= 'a' && tmpl[j] <= 'z') || tmpl[j] == '_')) ++j;
        if (j == i + 1 || j >= tmpl.size() || tmpl[j] != '>') {
            out += tmpl[i++];  // a bare '<', not a placeholder
            continue;
        }
        std::string name(tmpl.substr(i + 1, j - i - 1));
        auto it = bindings.find(name);
        if (it == bindings.end())
            throw TemplateError("missing binding for placeholder <" + name + ">", "<" + name + ">");
        out += it->second;
        i = j + 1;
    }
    return out;
}

std::string render_newline_escapes(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (size_t i = 0; i < text.size(); ++i) {
        if (text[i] == '\\' && i + 1 < text.size() && text[i + 1] == 'n') {
            out += '\n';
            ++i;
        } else {
            out += text[i];
        }
    }
    return out;
}

}  // namespace rcgen
