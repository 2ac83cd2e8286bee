#pragma once

// Disk-backed level store. A level directory becomes readable only once its
// DONE marker exists; the marker pins the record count and a checksum of
// members.txt, and completed levels are immutable.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "minorforge/iso.hpp"
#include "minorforge/linrep.hpp"
#include "minorforge/matroid.hpp"

namespace minorforge {

// One generated matroid with its two matrix views. Both representations are
// stored w.r.t. the colex-first basis: rows are the sorted basis elements,
// columns the sorted remainder.
struct MemberRecord {
    BasisMatroid m;
    LinearRep conf;  // proxy field, F-confined
    LinearRep carr;  // carrier field

    std::string serialize() const {
        return m.serialize() + "\n" + conf.serialize() + "\n" + carr.serialize();
    }

    InvariantKey invariant() const { return invariantKey(m); }

    MemberRecord normalized() const {
        std::uint16_t b0 = m.bases.at(0);
        return {m, reducedRepWrtBasis(conf, b0), reducedRepWrtBasis(carr, b0)};
    }

    static MemberRecord fromLines(const std::vector<std::string>& ls) {
        require(ls.size() == 3, "member record needs 3 lines");
        return parse(ls[0], ls[1], ls[2]);
    }

    static MemberRecord parse(const std::string& bLine, const std::string& confLine,
                              const std::string& carrLine) {
        BasisMatroid m = BasisMatroid::deserialize(bLine);
        std::uint16_t b0 = m.bases.at(0);
        std::vector<int> rl, cl;
        for (int g = 0; g < m.n; ++g) ((b0 >> g) & 1 ? rl : cl).push_back(g);
        LinearRep conf = LinearRep::deserialize(confLine, rl, cl);
        LinearRep carr = LinearRep::deserialize(carrLine, rl, cl);
        return {std::move(m), std::move(conf), std::move(carr)};
    }
};

namespace detail {

inline std::string fnvHex(const std::string& bytes) {
    Fnv h;
    h.bytes(reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size());
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h.h));
    return buf;
}

inline void writeFileAtomic(const std::filesystem::path& p, const std::string& content) {
    std::filesystem::path tmp = p;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        require(bool(out), "store: cannot open " + tmp.string());
        out << content;
        require(bool(out), "store: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, p);
}

inline std::string readFile(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    require(bool(in), "store: cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace detail

class LevelStore {
  public:
    explicit LevelStore(std::filesystem::path root) : root_(std::move(root)) {
        std::filesystem::create_directories(root_);
    }

    const std::filesystem::path& root() const { return root_; }

    std::filesystem::path levelDir(const std::string& cls, int n) const {
        return root_ / cls / ("n=" + std::to_string(n));
    }

    std::filesystem::path excludedFile(const std::string& cls, int n) const {
        return root_ / cls / "excluded" / ("n=" + std::to_string(n) + ".txt");
    }

    std::filesystem::path scratchDir(const std::string& cls, const std::string& tag) const {
        return root_ / cls / ("tmp-" + tag);
    }

    bool levelDone(const std::string& cls, int n) const {
        return std::filesystem::exists(levelDir(cls, n) / "DONE");
    }

    void writeLevel(const std::string& cls, int n, std::vector<MemberRecord> recs) const {
        require(!levelDone(cls, n), "store: level " + std::to_string(n) + " already complete");
        std::vector<std::string> lines;
        lines.reserve(recs.size());
        std::map<int, long long> byRank;
        for (const auto& r : recs) {
            require(r.m.n == n, "store: record size mismatch");
            lines.push_back(r.serialize());
            ++byRank[r.m.r];
        }
        std::sort(lines.begin(), lines.end());
        for (std::size_t i = 1; i < lines.size(); ++i)
            require(lines[i] != lines[i - 1], "store: duplicate record");
        std::string body;
        for (const auto& s : lines) {
            body += s;
            body += '\n';
        }
        std::string counts;
        for (const auto& [r, c] : byRank) counts += std::to_string(r) + "\t" + std::to_string(c) + "\n";
        counts += "total\t" + std::to_string(lines.size()) + "\n";
        auto dir = levelDir(cls, n);
        std::filesystem::create_directories(dir);
        detail::writeFileAtomic(dir / "members.txt", body);
        detail::writeFileAtomic(dir / "counts.tsv", counts);
        detail::writeFileAtomic(dir / "DONE", "records=" + std::to_string(lines.size()) +
                                                  " fnv=" + detail::fnvHex(body) + "\n");
    }

    std::vector<MemberRecord> readLevel(const std::string& cls, int n) const {
        auto dir = levelDir(cls, n);
        require(levelDone(cls, n), "store: level " + std::to_string(n) + " of " + cls + " not complete");
        std::string body = detail::readFile(dir / "members.txt");
        std::string marker = detail::readFile(dir / "DONE");
        std::size_t expect = 0;
        char fnv[32] = {0};
        require(std::sscanf(marker.c_str(), "records=%zu fnv=%31s", &expect, fnv) == 2,
                "store: malformed DONE marker in " + dir.string());
        require(detail::fnvHex(body) == fnv, "store: checksum mismatch in " + dir.string());
        std::vector<std::string> lines;
        std::istringstream in(body);
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        require(lines.size() % 3 == 0, "store: truncated members file in " + dir.string());
        std::vector<MemberRecord> out;
        out.reserve(lines.size() / 3);
        for (std::size_t i = 0; i < lines.size(); i += 3)
            out.push_back(MemberRecord::parse(lines[i], lines[i + 1], lines[i + 2]));
        require(out.size() == expect, "store: record count mismatch in " + dir.string());
        return out;
    }

    std::map<int, long long> readCounts(const std::string& cls, int n) const {
        require(levelDone(cls, n), "store: level not complete");
        std::string body = detail::readFile(levelDir(cls, n) / "counts.tsv");
        std::map<int, long long> out;
        std::istringstream in(body);
        for (std::string line; std::getline(in, line);) {
            std::istringstream ls(line);
            std::string key;
            long long cnt = 0;
            ls >> key >> cnt;
            if (key != "total") out[std::stoi(key)] = cnt;
        }
        return out;
    }

    std::vector<int> doneLevels(const std::string& cls) const {
        std::vector<int> out;
        auto dir = root_ / cls;
        if (!std::filesystem::exists(dir)) return out;
        for (const auto& e : std::filesystem::directory_iterator(dir)) {
            std::string name = e.path().filename().string();
            if (name.rfind("n=", 0) != 0) continue;
            int n = std::atoi(name.c_str() + 2);
            if (n > 0 && levelDone(cls, n)) out.push_back(n);
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    bool excludedDone(const std::string& cls, int n) const {
        return std::filesystem::exists(excludedFile(cls, n));
    }

    void writeExcluded(const std::string& cls, int n,
                       const std::vector<std::pair<std::string, BasisMatroid>>& xs) const {
        std::string body;
        for (const auto& [name, m] : xs) {
            require(m.n == n, "store: excluded size mismatch");
            body += name + "\t" + m.serialize() + "\n";
        }
        auto p = excludedFile(cls, n);
        std::filesystem::create_directories(p.parent_path());
        detail::writeFileAtomic(p, body);
    }

    std::vector<std::pair<std::string, BasisMatroid>> readExcluded(const std::string& cls,
                                                                   int n) const {
        std::string body = detail::readFile(excludedFile(cls, n));
        std::vector<std::pair<std::string, BasisMatroid>> out;
        std::istringstream in(body);
        for (std::string line; std::getline(in, line);) {
            auto tab = line.find('\t');
            require(tab != std::string::npos, "store: malformed excluded line");
            out.emplace_back(line.substr(0, tab), BasisMatroid::deserialize(line.substr(tab + 1)));
        }
        return out;
    }

  private:
    std::filesystem::path root_;
};

}  // namespace minorforge
