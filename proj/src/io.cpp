#include "collective/io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "collective/error.hpp"
#include "collective/rng.hpp"
#include "csv_util.hpp"

namespace collective::io {

using detail::csv_field;
using detail::format_double;
using nlohmann::json;

namespace {

std::vector<double> to_vector(const Eigen::VectorXd& v) { return {v.begin(), v.end()}; }

Eigen::VectorXd to_eigen(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

}  // namespace

std::string prices_wide_csv(const PricePanel& panel) {
  std::string out = "date";
  for (const auto& l : panel.labels) out += "," + csv_field(l);
  out += "\n";
  for (std::size_t t = 0; t < panel.dates.size(); ++t) {
    out += format_date(panel.dates[t]);
    for (Eigen::Index i = 0; i < panel.prices.rows(); ++i) {
      out += "," + format_double(panel.prices(i, static_cast<Eigen::Index>(t)));
    }
    out += "\n";
  }
  return out;
}

std::string prices_long_csv(const PricePanel& panel) {
  std::string out = "date,label,price\n";
  for (std::size_t t = 0; t < panel.dates.size(); ++t) {
    for (Eigen::Index i = 0; i < panel.prices.rows(); ++i) {
      out += format_date(panel.dates[t]) + "," + csv_field(panel.labels[static_cast<std::size_t>(i)]) +
             "," + format_double(panel.prices(i, static_cast<Eigen::Index>(t))) + "\n";
    }
  }
  return out;
}

std::string matrix_csv(const CorrelationMatrix& c) {
  std::string out = "label";
  for (const auto& l : c.labels) out += "," + csv_field(l);
  out += "\n";
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    out += csv_field(c.labels[static_cast<std::size_t>(i)]);
    for (Eigen::Index j = 0; j < c.size(); ++j) out += "," + format_double(c.entries(i, j));
    out += "\n";
  }
  return out;
}

CorrelationMatrix parse_matrix_csv(std::string_view text, std::string_view source) {
  const std::string src(source);
  std::vector<std::vector<std::string>> rows;
  for (auto line : detail::split_lines(text)) {
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    rows.push_back(detail::split_csv_line(line));
  }
  if (rows.empty()) throw InputError(src + ": empty file");
  CorrelationMatrix c;
  c.labels.assign(rows[0].begin() + 1, rows[0].end());
  const auto n = static_cast<Eigen::Index>(c.labels.size());
  if (static_cast<Eigen::Index>(rows.size()) != n + 1) {
    throw InputError(src + ": expected " + std::to_string(n) + " matrix rows, found " +
                     std::to_string(rows.size() - 1));
  }
  c.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i + 1)];
    if (static_cast<Eigen::Index>(row.size()) != n + 1) {
      throw InputError(src + ":" + std::to_string(i + 2) + ": wrong field count");
    }
    if (row[0] != c.labels[static_cast<std::size_t>(i)]) {
      throw InputError(src + ":" + std::to_string(i + 2) + ": row label '" + row[0] +
                       "' does not match column label '" + c.labels[static_cast<std::size_t>(i)] + "'");
    }
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto v = detail::parse_double(row[static_cast<std::size_t>(j + 1)]);
      if (!v) throw InputError(src + ":" + std::to_string(i + 2) + ": non-numeric entry");
      c.entries(i, j) = *v;
    }
  }
  return validated(std::move(c));
}

json matrix_json(const CorrelationMatrix& c) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < c.size(); ++i) {
    rows.push_back(std::vector<double>(c.entries.row(i).begin(), c.entries.row(i).end()));
  }
  return {{"labels", c.labels}, {"entries", rows}};
}

CorrelationMatrix parse_matrix_json(const json& j) {
  try {
    CorrelationMatrix c;
    c.labels = j.at("labels").get<std::vector<std::string>>();
    const auto rows = j.at("entries").get<std::vector<std::vector<double>>>();
    const auto n = static_cast<Eigen::Index>(rows.size());
    c.entries.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const auto& row = rows[static_cast<std::size_t>(i)];
      if (static_cast<Eigen::Index>(row.size()) != n) throw InputError("matrix json: ragged rows");
      for (Eigen::Index k = 0; k < n; ++k) c.entries(i, k) = row[static_cast<std::size_t>(k)];
    }
    return validated(std::move(c));
  } catch (const json::exception& e) {
    throw InputError(std::string("matrix json: ") + e.what());
  }
}

json report_json(const CollectiveReport& r) {
  const auto& rel = r.relative;
  return {
      {"labels", r.labels},
      {"lambda", to_vector(r.lambda)},
      {"pr", to_vector(r.pr)},
      {"pr_normalized", to_vector(r.pr_normalized)},
      {"npr", to_vector(r.npr)},
      {"independency", to_vector(r.independency)},
      {"delta", rel.delta},
      {"delta_std", rel.delta_std},
      {"ensemble_meta", {{"M", rel.count}, {"seed", rel.seed}, {"rng", std::string(kRngAlgorithm)}}},
      {"shuffled",
       {{"mean_pr", rel.mean_pr},
        {"member_mean_pr", rel.member_mean_pr},
        {"member_delta", rel.member_delta},
        {"pr_mean", to_vector(rel.shuffled_pr_mean)},
        {"npr_sorted_mean", to_vector(rel.shuffled_npr_sorted_mean)}}},
  };
}

CollectiveReport parse_report_json(const json& j) {
  try {
    CollectiveReport r;
    r.labels = j.at("labels").get<std::vector<std::string>>();
    r.lambda = to_eigen(j.at("lambda"));
    r.pr = to_eigen(j.at("pr"));
    r.pr_normalized = to_eigen(j.at("pr_normalized"));
    r.npr = to_eigen(j.at("npr"));
    r.independency = to_eigen(j.at("independency"));
    auto& rel = r.relative;
    rel.delta = j.at("delta").get<double>();
    rel.delta_std = j.at("delta_std").get<double>();
    rel.count = j.at("ensemble_meta").at("M").get<std::size_t>();
    rel.seed = j.at("ensemble_meta").at("seed").get<std::uint64_t>();
    const auto& sh = j.at("shuffled");
    rel.mean_pr = sh.at("mean_pr").get<double>();
    rel.member_mean_pr = sh.at("member_mean_pr").get<std::vector<double>>();
    rel.member_delta = sh.at("member_delta").get<std::vector<double>>();
    rel.shuffled_pr_mean = to_eigen(sh.at("pr_mean"));
    rel.shuffled_npr_sorted_mean = to_eigen(sh.at("npr_sorted_mean"));
    return r;
  } catch (const json::exception& e) {
    throw InputError(std::string("report json: ") + e.what());
  }
}

std::string pr_csv(const CollectiveReport& r) {
  std::string out = "k,lambda,pr,pr_normalized,shuffled_pr_mean\n";
  for (Eigen::Index k = 0; k < r.pr.size(); ++k) {
    out += std::to_string(k + 1) + "," + format_double(r.lambda(k)) + "," + format_double(r.pr(k)) +
           "," + format_double(r.pr_normalized(k)) + "," +
           format_double(r.relative.shuffled_pr_mean(k)) + "\n";
  }
  return out;
}

std::string npr_csv(const CollectiveReport& r) {
  std::vector<std::size_t> order(r.labels.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return r.npr(static_cast<Eigen::Index>(a)) < r.npr(static_cast<Eigen::Index>(b));
  });
  std::string out = "label,npr,independency,shuffled_npr_mean\n";
  for (std::size_t rank = 0; rank < order.size(); ++rank) {
    const auto i = static_cast<Eigen::Index>(order[rank]);
    out += csv_field(r.labels[order[rank]]) + "," + format_double(r.npr(i)) + "," +
           format_double(r.independency(i)) + "," +
           format_double(r.relative.shuffled_npr_sorted_mean(static_cast<Eigen::Index>(rank))) + "\n";
  }
  return out;
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "bin_left,bin_right,density\n";
  for (std::size_t b = 0; b < h.densities.size(); ++b) {
    out += format_double(h.edges[b]) + "," + format_double(h.edges[b + 1]) + "," +
           format_double(h.densities[b]) + "\n";
  }
  return out;
}

Histogram parse_histogram_csv(std::string_view text) {
  const auto lines = detail::split_lines(text);
  Histogram h;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = detail::split_csv_line(lines[i]);
    if (cells.size() != 3) throw InputError("histogram csv: expected 3 fields");
    std::array<double, 3> v{};
    for (std::size_t c = 0; c < 3; ++c) {
      const auto x = detail::parse_double(cells[c]);
      if (!x) throw InputError("histogram csv: non-numeric field");
      v[c] = *x;
    }
    if (h.edges.empty()) h.edges.push_back(v[0]);
    h.edges.push_back(v[1]);
    h.densities.push_back(v[2]);
  }
  h.degenerate = h.edges.size() == 2 && h.edges[0] == h.edges[1];
  return h;
}

namespace {

std::string newick_label(const std::string& label) {
  if (label.find_first_of(" ()[]':;,\t") == std::string::npos) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out.push_back('\'');
    out.push_back(c);
  }
  return out + "'";
}

double node_height(const ClusterTree& tree, int node) {
  return node < tree.leaves ? 0.0 : tree.merge_of(node).height;
}

void emit_newick(const ClusterTree& tree, const std::vector<std::string>& labels, int node,
                 std::string& out) {
  if (node < tree.leaves) {
    out += newick_label(labels[static_cast<std::size_t>(node)]);
    return;
  }
  const Merge& m = tree.merge_of(node);
  int first = m.left;
  int second = m.right;
  if (tree.size_of(second) < tree.size_of(first)) std::swap(first, second);
  out += "(";
  emit_newick(tree, labels, first, out);
  out += ":" + format_double(m.height - node_height(tree, first)) + ",";
  emit_newick(tree, labels, second, out);
  out += ":" + format_double(m.height - node_height(tree, second)) + ")";
}

class NewickParser {
 public:
  explicit NewickParser(std::string_view text) : s_(text) {}

  NewickNode parse() {
    NewickNode root = node();
    skip_ws();
    expect(';');
    return root;
  }

 private:
  NewickNode node() {
    NewickNode n;
    skip_ws();
    if (peek() == '(') {
      ++pos_;
      do {
        n.children.push_back(node());
        skip_ws();
      } while (peek() == ',' && ++pos_);
      expect(')');
    }
    n.label = label();
    skip_ws();
    if (peek() == ':') {
      ++pos_;
      const auto start = pos_;
      while (pos_ < s_.size() && std::string_view("0123456789.eE+-").find(s_[pos_]) != std::string_view::npos)
        ++pos_;
      const auto v = detail::parse_double(s_.substr(start, pos_ - start));
      if (!v) fail("bad branch length");
      n.length = *v;
    }
    return n;
  }

  std::string label() {
    skip_ws();
    std::string out;
    if (peek() == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= s_.size()) fail("unterminated quoted label");
        const char c = s_[pos_++];
        if (c == '\'') {
          if (peek() == '\'') {
            out.push_back('\'');
            ++pos_;
          } else {
            break;
          }
        } else {
          out.push_back(c);
        }
      }
      return out;
    }
    while (pos_ < s_.size() && std::string_view("():;,").find(s_[pos_]) == std::string_view::npos &&
           s_[pos_] != ' ')
      out.push_back(s_[pos_++]);
    return out;
  }

  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\n' || s_[pos_] == '\t' || s_[pos_] == '\r'))
      ++pos_;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& why) const {
    throw InputError("newick: " + why + " at offset " + std::to_string(pos_));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string newick(const ClusterTree& tree, const std::vector<std::string>& labels) {
  std::string out;
  emit_newick(tree, labels, tree.root(), out);
  return out + ";\n";
}

NewickNode parse_newick(std::string_view text) { return NewickParser(text).parse(); }

json dendrogram_json(const ClusterTree& tree, const std::vector<std::string>& labels) {
  json merges = json::array();
  for (const auto& m : tree.merges) {
    merges.push_back({{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  }
  return {{"labels", labels},
          {"linkage", std::string(to_string(tree.linkage))},
          {"leaf_order", tree.leaf_order},
          {"merges", merges}};
}

ClusterTree parse_dendrogram_json(const json& j) {
  try {
    ClusterTree t;
    t.leaves = static_cast<int>(j.at("labels").size());
    t.linkage = parse_linkage(j.at("linkage").get<std::string>());
    t.leaf_order = j.at("leaf_order").get<std::vector<int>>();
    for (const auto& m : j.at("merges")) {
      t.merges.push_back({m.at("left").get<int>(), m.at("right").get<int>(),
                          m.at("height").get<double>(), m.at("size").get<int>()});
    }
    return t;
  } catch (const json::exception& e) {
    throw InputError(std::string("dendrogram json: ") + e.what());
  }
}

std::string communities_csv(const CommunityAssignment& a) {
  std::string out = "label,community\n";
  for (std::size_t i = 0; i < a.labels.size(); ++i) {
    out += csv_field(a.labels[i]) + "," + std::to_string(a.community[i]) + "\n";
  }
  return out;
}

CommunityAssignment parse_communities_csv(std::string_view text) {
  CommunityAssignment a;
  const auto lines = detail::split_lines(text);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const auto cells = detail::split_csv_line(lines[i]);
    if (cells.size() != 2) throw InputError("communities csv: expected 2 fields");
    a.labels.push_back(cells[0]);
    try {
      a.community.push_back(std::stoi(cells[1]));
    } catch (const std::exception&) {
      throw InputError("communities csv: bad community id '" + cells[1] + "'");
    }
  }
  return a;
}

json heatmap_json(const ReorderedMatrix& r) {
  return {{"labels", r.matrix.labels}, {"order", r.order}};
}

std::string read_text(const std::filesystem::path& path) { return detail::read_file(path.string()); }

void write_atomic(const std::filesystem::path& path, std::string_view content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into " + path.string());
  }
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw IoError("sha256 failed");
  }
  std::string hex;
  hex.reserve(2 * len);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace collective::io
