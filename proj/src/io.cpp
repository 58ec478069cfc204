#include "harmsum/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace harmsum {

void write_record(std::ostream& out, const std::string& payload) {
    out << payload.size() << '\n' << payload << '\n';
}

std::optional<std::string> read_record(std::istream& in) {
    std::string header;
    if (!std::getline(in, header)) return std::nullopt;
    size_t len = 0;
    try {
        size_t pos = 0;
        len = std::stoull(header, &pos);
        if (pos != header.size()) return std::nullopt;
    } catch (const std::exception&) {
        return std::nullopt;
    }
    std::string payload(len, '\0');
    if (!in.read(payload.data(), static_cast<std::streamsize>(len))) return std::nullopt;
    if (in.get() != '\n') return std::nullopt;
    return payload;
}

void save_checkpoint(const std::string& path, const std::string& fingerprint,
                     const std::vector<std::string>& payload) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write checkpoint: " + tmp);
        write_record(out, fingerprint);
        for (const auto& rec : payload) write_record(out, rec);
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw std::runtime_error("cannot move checkpoint into place: " + path);
}

std::optional<std::vector<std::string>> load_checkpoint(const std::string& path,
                                                        const std::string& fingerprint) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    auto head = read_record(in);
    if (!head || *head != fingerprint) return std::nullopt;
    std::vector<std::string> payload;
    while (auto rec = read_record(in)) payload.push_back(std::move(*rec));
    return payload;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
    std::string quoted = "\"";
    for (char c : raw) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& fields) {
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i) out << ',';
        out << csv_field(fields[i]);
    }
    out << '\n';
}

std::string rle_encode(const std::vector<long>& values) {
    std::ostringstream out;
    size_t i = 0;
    while (i < values.size()) {
        size_t j = i;
        while (j < values.size() && values[j] == values[i]) ++j;
        if (i) out << ' ';
        out << values[i] << 'x' << (j - i);
        i = j;
    }
    return out.str();
}

std::vector<long> rle_decode(const std::string& text) {
    std::vector<long> values;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        size_t split = tok.find('x');
        if (split == std::string::npos) throw std::invalid_argument("bad rle token: " + tok);
        long v = std::stol(tok.substr(0, split));
        size_t n = std::stoull(tok.substr(split + 1));
        values.insert(values.end(), n, v);
    }
    return values;
}

void write_index_list(std::ostream& out, const std::vector<mpz_class>& indices) {
    for (const auto& i : indices) out << i.get_str() << '\n';
}

void OrderedSink::submit(u64 index, std::string text) {
    pending_.emplace(index, std::move(text));
    while (!pending_.empty() && pending_.begin()->first == next_) {
        out_ << pending_.begin()->second;
        pending_.erase(pending_.begin());
        ++next_;
    }
}

}  // namespace harmsum
