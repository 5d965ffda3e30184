#include "rcgen/json_stream.hpp"

#include <streambuf>
#include <string>

#include "rcgen/errors.hpp"

namespace rcgen {

using nlohmann::json;

namespace {

// Builds a json value from a stretch of SAX events.
class DomBuilder {
public:
    bool active() const { return active_; }
    bool done() const { return active_ && stack_.empty() && has_root_; }

    json take() {
        active_ = false;
        has_root_ = false;
        return std::move(root_);
    }

    void value(json v) {
        activate();
        if (stack_.empty()) {
            root_ = std::move(v);
            has_root_ = true;
            return;
        }
        place(std::move(v));
    }

    void begin_container(json v) {
        activate();
        if (stack_.empty()) {
            root_ = std::move(v);
            has_root_ = true;
            stack_.push_back(&root_);
            return;
        }
        stack_.push_back(place(std::move(v)));
    }

    void end_container() { stack_.pop_back(); }

    void key(std::string k) { key_ = std::move(k); }

private:
    void activate() { active_ = true; }

    json* place(json v) {
        json& top = *stack_.back();
        if (top.is_object()) return &(top[key_] = std::move(v));
        top.push_back(std::move(v));
        return &top.back();
    }

    json root_;
    std::vector<json*> stack_;
    std::string key_;
    bool active_ = false;
    bool has_root_ = false;
};

// SAX handler that dispatches each element of the root array as its own DOM.
class ArrayElementSax : public json::json_sax_t {
public:
    explicit ArrayElementSax(const std::function<void(json, size_t)>& cb) : cb_(cb) {}

    bool null() override { return emit(json(nullptr)); }
    bool boolean(bool v) override { return emit(json(v)); }
    bool number_integer(number_integer_t v) override { return emit(json(v)); }
    bool number_unsigned(number_unsigned_t v) override { return emit(json(v)); }
    bool number_float(number_float_t v, const string_t&) override { return emit(json(v)); }
    bool string(string_t& v) override { return emit(json(v)); }
    bool binary(binary_t& v) override { return emit(json(v)); }

    bool key(string_t& k) override {
        builder_.key(k);
        return true;
    }

    bool start_object(std::size_t) override {
        if (depth_ == 0)
            throw ParseError("expected a top-level array of records", 0);
        ++depth_;
        builder_.begin_container(json::object());
        return true;
    }

    bool end_object() override {
        --depth_;
        builder_.end_container();
        return flush();
    }

    bool start_array(std::size_t) override {
        ++depth_;
        if (depth_ == 1) return true;  // the root array itself
        builder_.begin_container(json::array());
        return true;
    }

    bool end_array() override {
        --depth_;
        if (depth_ == 0) return true;
        builder_.end_container();
        return flush();
    }

    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        throw ParseError(ex.what(), position);
    }

private:
    bool emit(json v) {
        if (depth_ == 0) throw ParseError("expected a top-level array of records", 0);
        builder_.value(std::move(v));
        return flush();
    }

    bool flush() {
        if (depth_ == 1 && builder_.done()) cb_(builder_.take(), 0);
        return true;
    }

    const std::function<void(json, size_t)>& cb_;
    DomBuilder builder_;
    int depth_ = 0;
};

// SAX handler for a COCO-style root object: streams elements of the tracked
// top-level arrays, skips everything else.
class CocoSax : public json::json_sax_t {
public:
    explicit CocoSax(const std::function<void(std::string_view, json)>& cb) : cb_(cb) {}

    bool null() override { return emit(json(nullptr)); }
    bool boolean(bool v) override { return emit(json(v)); }
    bool number_integer(number_integer_t v) override { return emit(json(v)); }
    bool number_unsigned(number_unsigned_t v) override { return emit(json(v)); }
    bool number_float(number_float_t v, const string_t&) override { return emit(json(v)); }
    bool string(string_t& v) override { return emit(json(v)); }
    bool binary(binary_t& v) override { return emit(json(v)); }

    bool key(string_t& k) override {
        if (depth_ == 1) current_key_ = k;
        if (in_section_ && depth_ >= 3) builder_.key(k);
        return true;
    }

    bool start_object(std::size_t) override {
        if (depth_ == 0) {
            ++depth_;
            return true;  // root object
        }
        ++depth_;
        if (in_section_ && depth_ >= 3) builder_.begin_container(json::object());
        return true;
    }

    bool end_object() override {
        --depth_;
        if (in_section_ && depth_ >= 2) {
            builder_.end_container();
            flush();
        }
        return true;
    }

    bool start_array(std::size_t) override {
        if (depth_ == 1 && tracked(current_key_)) {
            in_section_ = true;
            section_ = current_key_;
            ++depth_;
            return true;  // the section array itself
        }
        ++depth_;
        if (in_section_ && depth_ >= 3) builder_.begin_container(json::array());
        return true;
    }

    bool end_array() override {
        --depth_;
        if (in_section_ && depth_ == 1) {
            in_section_ = false;
            return true;
        }
        if (in_section_ && depth_ >= 2) {
            builder_.end_container();
            flush();
        }
        return true;
    }

    bool parse_error(std::size_t position, const std::string&,
                     const nlohmann::detail::exception& ex) override {
        throw ParseError(ex.what(), position);
    }

private:
    static bool tracked(const std::string& key) {
        return key == "images" || key == "annotations" || key == "categories";
    }

    bool emit(json v) {
        if (depth_ == 0) throw ParseError("expected a top-level object", 0);
        if (in_section_ && depth_ >= 2) {
            builder_.value(std::move(v));
            flush();
        }
        return true;
    }

    void flush() {
        if (depth_ == 2 && builder_.done()) cb_(section_, builder_.take());
    }

    const std::function<void(std::string_view, json)>& cb_;
    DomBuilder builder_;
    std::string current_key_;
    std::string section_;
    int depth_ = 0;
    bool in_section_ = false;
};

// Presents a consumed prefix followed by the rest of a stream as one buffer.
class PrefixedBuf : public std::streambuf {
public:
    PrefixedBuf(std::string prefix, std::istream& rest) : prefix_(std::move(prefix)), rest_(rest) {
        setg(prefix_.data(), prefix_.data(), prefix_.data() + prefix_.size());
    }

protected:
    int_type underflow() override {
        if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
        rest_.read(buf_, sizeof(buf_));
        std::streamsize n = rest_.gcount();
        if (n <= 0) return traits_type::eof();
        setg(buf_, buf_, buf_ + n);
        return traits_type::to_int_type(*gptr());
    }

private:
    std::string prefix_;
    std::istream& rest_;
    char buf_[1 << 14];
};

int peek_first_byte(std::istream& in) {
    int c;
    while ((c = in.peek()) != EOF) {
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
            in.get();
            continue;
        }
        break;
    }
    return c;
}

std::string_view trim_view(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    size_t e = s.find_last_not_of(" \t\r");
    return std::string_view(s).substr(b, e - b + 1);
}

void ndjson_records(std::istream& in, const std::function<void(json, size_t)>& on_record) {
    std::string line;
    size_t offset = 0, line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t here = offset;
        offset += line.size() + 1;
        if (trim_view(line).empty()) continue;
        try {
            on_record(json::parse(line), here);
        } catch (const json::parse_error& ex) {
            throw ParseError(ex.what(), here + (ex.byte > 0 ? ex.byte - 1 : 0), line_no);
        }
    }
}

}  // namespace

void for_each_record(std::istream& in, const std::function<void(json, size_t)>& on_record) {
    int first = peek_first_byte(in);
    if (first == EOF) return;
    if (first == '[') {
        ArrayElementSax sax(on_record);
        if (!json::sax_parse(in, &sax))
            throw ParseError("invalid JSON array document", 0);
        return;
    }
    ndjson_records(in, on_record);
}

void for_each_coco_element(std::istream& in,
                           const std::function<void(std::string_view, json)>& on_element) {
    int first = peek_first_byte(in);
    if (first == EOF) return;
    if (first != '{') throw ParseError("detection input must be an object or NDJSON of objects", 0);

    // Disambiguate NDJSON (first line parses alone) from one pretty-printed
    // document spanning many lines.
    std::string first_line;
    std::getline(in, first_line);
    bool line_is_complete = true;
    json parsed_line;
    try {
        parsed_line = json::parse(first_line);
    } catch (const json::parse_error&) {
        line_is_complete = false;
    }

    auto stream_doc = [&](std::istream& doc_in) {
        CocoSax sax(on_element);
        if (!json::sax_parse(doc_in, &sax)) throw ParseError("invalid JSON document", 0);
    };

    if (!line_is_complete) {
        first_line += '\n';
        PrefixedBuf buf(std::move(first_line), in);
        std::istream whole(&buf);
        stream_doc(whole);
        return;
    }

    auto dispatch_doc = [&](const json& doc, size_t line_no) {
        if (!doc.is_object())
            throw ParseError("detection record is not an object", 0, line_no);
        for (const char* section : {"images", "annotations", "categories"}) {
            auto it = doc.find(section);
            if (it == doc.end()) continue;
            if (!it->is_array()) throw ParseError("section is not an array", 0, line_no);
            for (const auto& element : *it) on_element(section, element);
        }
    };

    dispatch_doc(parsed_line, 1);
    std::string line;
    size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim_view(line).empty()) continue;
        try {
            dispatch_doc(json::parse(line), line_no);
        } catch (const json::parse_error& ex) {
            throw ParseError(ex.what(), 0, line_no);
        }
    }
}

}  // namespace rcgen
