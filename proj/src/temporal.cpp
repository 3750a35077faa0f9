#include "threadsec/temporal.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "threadsec/error.hpp"
#include "threadsec/io.hpp"

namespace threadsec {

namespace {

constexpr double kMinutesPerDay = 1440.0;

bool by_time(const AttackEvent* a, const AttackEvent* b) {
  return std::tie(a->ts, a->comment_id) < std::tie(b->ts, b->comment_id);
}

void append_gaps(std::vector<const AttackEvent*>& seq, std::vector<double>& out) {
  std::sort(seq.begin(), seq.end(), by_time);
  for (std::size_t i = 1; i < seq.size(); ++i) out.push_back(static_cast<double>(seq[i]->ts - seq[i - 1]->ts) / 60.0);
}

std::chrono::year_month month_of(Timestamp ts) {
  using namespace std::chrono;
  const year_month_day ymd{floor<days>(sys_seconds{seconds{ts}})};
  return {ymd.year(), ymd.month()};
}

std::string format_month(std::chrono::year_month ym) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02u", static_cast<int>(ym.year()), static_cast<unsigned>(ym.month()));
  return buf;
}

}  // namespace

double relative_position(std::size_t rank, std::size_t n) {
  if (n <= 1) return 0.0;
  return static_cast<double>(rank) / static_cast<double>(n - 1);
}

std::vector<AttackEvent> build_attack_events(const Corpus& corpus, std::span<const MaliciousLabel> labels) {
  std::vector<AttackEvent> events;
  events.reserve(labels.size());
  for (const auto& l : labels) {
    auto ref = corpus.find_comment(l.comment_id);
    if (!ref) throw ValidationError("label references unknown comment " + l.comment_id);
    const auto& thread = corpus.threads()[ref->thread];
    const auto& c = thread.comments[ref->index];
    const Page* page = corpus.find_page(thread.post.page_id);
    AttackEvent e;
    e.comment_id = c.comment_id;
    e.post_id = thread.post.post_id;
    e.page_id = thread.post.page_id;
    e.account_id = c.author_id;
    e.category = l.category;
    e.region = page ? page->region : Region::Other;
    e.ts = c.created_ts;
    e.minutes_since_post = minutes_since_post(thread.post, c);
    e.relative_position = relative_position(ref->index, thread.comments.size());
    events.push_back(std::move(e));
  }
  std::sort(events.begin(), events.end(), [](const AttackEvent& a, const AttackEvent& b) {
    return std::tie(a.comment_id, a.category) < std::tie(b.comment_id, b.category);
  });
  return events;
}

std::vector<AttackEvent> unique_attacks(std::span<const AttackEvent> events) {
  std::vector<AttackEvent> out;
  std::vector<const AttackEvent*> sorted;
  for (const auto& e : events) sorted.push_back(&e);
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const AttackEvent* a, const AttackEvent* b) { return a->comment_id < b->comment_id; });
  for (const auto* e : sorted) {
    if (out.empty() || out.back().comment_id != e->comment_id) out.push_back(*e);
  }
  return out;
}

std::string region_group(Region region) { return "region:" + std::string(to_string(region)); }
std::string category_group(Category category) { return "category:" + std::string(to_string(category)); }

GroupedEcdf relative_positions(std::span<const AttackEvent> events) {
  std::map<std::string, std::vector<double>> values;
  for (const auto& e : unique_attacks(events)) {
    values["all"].push_back(e.relative_position);
    values[region_group(e.region)].push_back(e.relative_position);
  }
  for (const auto& e : events) values[category_group(e.category)].push_back(e.relative_position);
  return ecdf_by_group(values);
}

SincePostAnalysis time_since_post(std::span<const AttackEvent> events) {
  std::map<std::string, std::vector<double>> values;
  for (const auto& e : unique_attacks(events)) {
    values["all"].push_back(e.minutes_since_post);
    values[region_group(e.region)].push_back(e.minutes_since_post);
  }
  for (const auto& e : events) values[category_group(e.category)].push_back(e.minutes_since_post);

  SincePostAnalysis out;
  out.ecdf = ecdf_by_group(values);
  for (const auto& [group, v] : values) {
    const auto within = std::count_if(v.begin(), v.end(), [](double m) { return m <= kMinutesPerDay; });
    out.within_day[group] = static_cast<double>(within) / static_cast<double>(v.size());
  }
  return out;
}

std::map<std::string, std::vector<double>> page_gaps(std::span<const AttackEvent> events) {
  const auto unique = unique_attacks(events);
  std::map<std::string, std::vector<const AttackEvent*>> by_page;
  for (const auto& e : unique) by_page[e.page_id].push_back(&e);
  std::map<std::string, std::vector<double>> out;
  for (auto& [page, seq] : by_page) append_gaps(seq, out[page]);
  return out;
}

GroupedEcdf inter_attack_intervals(std::span<const AttackEvent> events) {
  std::map<std::string, std::vector<double>> values;
  const auto unique = unique_attacks(events);
  std::map<std::string, std::vector<const AttackEvent*>> by_page;
  for (const auto& e : unique) by_page[e.page_id].push_back(&e);
  for (auto& [page, seq] : by_page) {
    std::vector<double> gaps;
    append_gaps(seq, gaps);
    const std::string region = region_group(seq.front()->region);
    auto& all = values["all"];
    auto& reg = values[region];
    all.insert(all.end(), gaps.begin(), gaps.end());
    reg.insert(reg.end(), gaps.begin(), gaps.end());
    values["page:" + page] = std::move(gaps);
  }

  std::map<std::pair<std::string, Category>, std::vector<const AttackEvent*>> by_page_category;
  for (const auto& e : events) by_page_category[{e.page_id, e.category}].push_back(&e);
  for (auto& [key, seq] : by_page_category) append_gaps(seq, values[category_group(key.second)]);

  // Groups that ended up without gaps (single attacks) produce empty tables; drop them.
  std::erase_if(values, [](const auto& kv) { return kv.second.empty(); });
  return ecdf_by_group(values);
}

std::string utc_month(Timestamp ts) { return format_month(month_of(ts)); }

MonthlyHeatmap monthly_heatmap(const Corpus& corpus, std::span<const AttackEvent> events) {
  MonthlyHeatmap h;
  for (const auto& p : corpus.pages()) {
    h.page_ids.push_back(p.page_id);
    h.page_names.push_back(p.name);
  }
  auto range = corpus.time_range();
  const auto unique = unique_attacks(events);
  for (const auto& e : unique) {
    if (!range) range = std::pair{e.ts, e.ts};
    range->first = std::min(range->first, e.ts);
    range->second = std::max(range->second, e.ts);
  }
  if (!range) {
    h.counts.resize(static_cast<Eigen::Index>(h.page_ids.size()), 0);
    return h;
  }

  const auto first = month_of(range->first);
  const auto last = month_of(range->second);
  for (auto m = first; m <= last; m += std::chrono::months{1}) h.months.push_back(format_month(m));
  h.counts = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(h.page_ids.size()), static_cast<Eigen::Index>(h.months.size()));

  for (const auto& e : unique) {
    auto row = std::lower_bound(h.page_ids.begin(), h.page_ids.end(), e.page_id);
    if (row == h.page_ids.end() || *row != e.page_id) throw ValidationError("attack on unknown page " + e.page_id);
    const auto col = (month_of(e.ts).year() - first.year()).count() * 12 +
                     (static_cast<int>(static_cast<unsigned>(month_of(e.ts).month())) -
                      static_cast<int>(static_cast<unsigned>(first.month())));
    ++h.counts(row - h.page_ids.begin(), col);
  }
  return h;
}

void write_heatmap_csv(std::ostream& out, const MonthlyHeatmap& h) {
  out << "page";
  for (const auto& m : h.months) out << ',' << m;
  out << '\n';
  for (std::size_t r = 0; r < h.page_names.size(); ++r) {
    out << io::csv_field(h.page_names[r]);
    for (Eigen::Index c = 0; c < h.counts.cols(); ++c) out << ',' << h.counts(static_cast<Eigen::Index>(r), c);
    out << '\n';
  }
}

}  // namespace threadsec
