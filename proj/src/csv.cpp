#include "newsclf/csv.hpp"

namespace newsclf::csv {

Reader::Reader(std::string_view text) : text_(text) {
    if (text_.starts_with("\xEF\xBB\xBF")) {
        pos_ = 3;
    }
}

void Reader::skip_to_line_end() {
    while (pos_ < text_.size() && text_[pos_] != '\n') {
        ++pos_;
    }
    if (pos_ < text_.size()) {
        ++pos_;
        ++line_;
    }
}

std::optional<Record> Reader::next() {
    // blank lines between records carry no data
    while (pos_ < text_.size() && (text_[pos_] == '\n' || text_[pos_] == '\r')) {
        if (text_[pos_] == '\n') {
            ++line_;
        }
        ++pos_;
    }
    if (pos_ >= text_.size()) {
        return std::nullopt;
    }

    Record rec;
    rec.line = line_;
    std::string field;

    for (;;) {
        field.clear();
        if (pos_ < text_.size() && text_[pos_] == '"') {
            ++pos_;
            bool closed = false;
            while (pos_ < text_.size()) {
                const char c = text_[pos_++];
                if (c == '"') {
                    if (pos_ < text_.size() && text_[pos_] == '"') {
                        field.push_back('"');
                        ++pos_;
                    } else {
                        closed = true;
                        break;
                    }
                } else {
                    if (c == '\n') {
                        ++line_;
                    }
                    field.push_back(c);
                }
            }
            if (!closed) {
                rec.fields.push_back(std::move(field));
                rec.error = "unterminated quoted field";
                return rec;
            }
            if (pos_ < text_.size() && text_[pos_] == '\r' && pos_ + 1 < text_.size() &&
                text_[pos_ + 1] == '\n') {
                ++pos_;
            }
            if (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '\n') {
                rec.fields.push_back(std::move(field));
                rec.error = "unexpected character after closing quote";
                skip_to_line_end();
                return rec;
            }
        } else {
            while (pos_ < text_.size() && text_[pos_] != ',' && text_[pos_] != '\n') {
                field.push_back(text_[pos_++]);
            }
            if (!field.empty() && field.back() == '\r' &&
                (pos_ >= text_.size() || text_[pos_] == '\n')) {
                field.pop_back();
            }
        }
        rec.fields.push_back(std::move(field));

        if (pos_ >= text_.size()) {
            return rec;
        }
        if (text_[pos_] == '\n') {
            ++pos_;
            ++line_;
            return rec;
        }
        ++pos_;  // comma
    }
}

std::vector<Record> parse_all(std::string_view text) {
    std::vector<Record> out;
    Reader reader(text);
    while (auto rec = reader.next()) {
        out.push_back(std::move(*rec));
    }
    return out;
}

}  // namespace newsclf::csv
