#pragma once

// Periodic Nielsen path search for expanding train track maps.
//
// An indivisible Nielsen path of period k decomposes as alpha-bar beta where
// both legs are legal, the junction turn is the unique illegal turn crossed,
// and g^k maps each leg over itself: g^k(alpha) = gamma alpha with a common
// prefix gamma. Metric bookkeeping pins everything down:
//
//   |gamma| = (lambda^k - 1) |alpha| = (lambda^k - 1) |beta|,
//
// and gamma is the agreement of the g^k images at the turn, so |gamma| is at
// most the divergence bound D(g^k) <= D(g) (lambda^k - 1)/(lambda - 1). Leg
// lengths are therefore bounded by D(g)/(lambda - 1) uniformly in k.
//
// The search enumerates all candidate endpoints (fixed vertices with their
// fixed directions, and interior fixed points solved from the affine
// occurrence equation t = c/(lambda^k - 1)), grows the eigenray of each
// endpoint germ, and reads candidate legs off the ray's vertex passages
// within the leg radius. Candidate legs pair up into a Nielsen path exactly
// when their gamma prefixes agree letter for letter, which is then verified
// directly. Periods only range over divisors of the rotationless power:
// iterating that power fixes every periodic Nielsen path.
//
// Everything below is budgeted. Exceeding the work budget aborts the search
// and the caller reports inconclusive; a certified "no" is only issued when
// the full finite enumeration ran to completion.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ttcert/graph_map.hpp"
#include "ttcert/pf.hpp"
#include "ttcert/tt.hpp"
#include "ttcert/verdict.hpp"

namespace ttcert {

// Smallest power for which every periodic direction and periodic vertex is
// fixed.
inline int rotationless_power(const GraphMap& g) {
  GateStructure gates = compute_gates(g);
  long r = 1;
  auto fold = [&r](long p) {
    r = std::lcm(r, p);
    if (r > 1000000) throw TTError("rotationless power exceeds 10^6");
  };
  for (HalfEdge d = 0; d < g.graph().direction_count(); ++d)
    if (gates.period[d] > 0) fold(gates.period[d]);
  for (Vertex v = 0; v < g.graph().vertex_count(); ++v) {
    Vertex x = v;
    for (int t = 1; t <= g.graph().vertex_count(); ++t) {
      x = g.vertex_image(x);
      if (x == v) {
        fold(t);
        break;
      }
    }
  }
  return static_cast<int>(r);
}

struct BudgetExhausted {};

class WorkBudget {
 public:
  explicit WorkBudget(long long units) : remaining_(units) {}
  void charge(long long units = 1) {
    remaining_ -= units;
    if (remaining_ < 0) throw BudgetExhausted{};
  }
  long long used_since(long long start) const { return start - remaining_; }
  long long remaining() const { return remaining_; }

 private:
  long long remaining_;
};

inline long long default_budget() {
  if (const char* env = std::getenv("TTKIT_BUDGET")) {
    char* end = nullptr;
    long long v = std::strtoll(env, &end, 10);
    if (end != env && v >= 0) return v;
  }
  return 10000000;
}

namespace detail {

// Truncated image words of g^power without materializing the full word.
// Edge iterates of a train track map never cancel, so image prefixes of
// legal prefixes are prefixes of image words and plain concatenation is
// exact.
class LazyIterate {
 public:
  LazyIterate(const GraphMap& g, int power, const std::vector<double>& len,
              WorkBudget& budget)
      : g_(g), power_(power), len_(len), budget_(budget) {}

  double length(HalfEdge e) const { return len_[edge_of(e)]; }

  double length_of(const Path& p) const {
    double s = 0.0;
    for (HalfEdge e : p) s += length(e);
    return s;
  }

  // Prefix of g^power(e) covering the target arclength (all of it when the
  // image is shorter).
  Path edge_prefix(HalfEdge e, double target) const {
    Path p = {e};
    for (int step = 0; step < power_; ++step) p = truncated_apply(p, target);
    return p;
  }

  // Prefix of g^power applied to a legal path.
  Path path_prefix(const Path& p, double target) const {
    Path out;
    double covered = 0.0;
    for (HalfEdge e : p) {
      if (covered >= target) break;
      Path piece = edge_prefix(e, target - covered);
      for (HalfEdge x : piece) {
        out.push_back(x);
        covered += length(x);
      }
    }
    return out;
  }

 private:
  Path truncated_apply(const Path& p, double target) const {
    Path out;
    double covered = 0.0;
    for (HalfEdge e : p) {
      for (HalfEdge x : g_.image(e)) {
        budget_.charge();
        out.push_back(x);
        covered += length(x);
        if (covered >= target) return out;
      }
    }
    return out;
  }

  const GraphMap& g_;
  int power_;
  const std::vector<double>& len_;
  WorkBudget& budget_;
};

// Supremum of the image agreement over tight path pairs diverging at a
// turn. States track a position inside an edge image on each side, or a
// frontier awaiting a tight extension. Any state revisited along the active
// chain would mean two distinct tight paths share arbitrarily long image
// prefixes, which a homotopy equivalence cannot do.
class AgreementSearch {
 public:
  AgreementSearch(const GraphMap& g, const std::vector<double>& len,
                  WorkBudget& budget)
      : g_(g), len_(len), budget_(budget) {
    const int dirs = g.graph().direction_count();
    offsets_.resize(dirs + 1, 0);
    for (HalfEdge e = 0; e < dirs; ++e)
      offsets_[e + 1] = offsets_[e] + static_cast<int>(g.image(e).size());
    in_image_states_ = offsets_[dirs];
  }

  double max_over_turns() {
    double best = 0.0;
    const Graph& gr = g_.graph();
    for (HalfEdge a = 0; a < gr.direction_count(); ++a)
      for (HalfEdge b = a + 1; b < gr.direction_count(); ++b)
        if (gr.origin(a) == gr.origin(b))
          best = std::max(best, gain(in_image(a, 0), in_image(b, 0)));
    return best;
  }

 private:
  // State encoding: [0, in_image_states_) is a position inside some edge
  // image; in_image_states_ + d is a frontier that last consumed reverse(d).
  int in_image(HalfEdge e, int i) const { return offsets_[e] + i; }
  int frontier(HalfEdge forbidden) const {
    return in_image_states_ + forbidden;
  }

  struct Pos {
    HalfEdge e;
    int i;
  };

  Pos decode(int state) const {
    int lo = 0, hi = static_cast<int>(offsets_.size()) - 1;
    while (lo + 1 < hi) {
      int mid = (lo + hi) / 2;
      if (offsets_[mid] <= state)
        lo = mid;
      else
        hi = mid;
    }
    return {lo, state - offsets_[lo]};
  }

  int advance(int state) const {
    Pos p = decode(state);
    const Path& img = g_.image(p.e);
    if (p.i + 1 < static_cast<int>(img.size())) return in_image(p.e, p.i + 1);
    return frontier(reverse(p.e));
  }

  double gain(int s1, int s2) {
    if (s1 > s2) std::swap(s1, s2);
    auto key = std::make_pair(s1, s2);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!on_stack_.insert(key).second)
      throw TTError("image agreement fails to terminate");
    budget_.charge();

    double result = 0.0;
    if (s1 >= in_image_states_) {
      // Frontier: branch over tight extensions.
      HalfEdge forbidden = s1 - in_image_states_;
      Vertex v = g_.graph().origin(forbidden);
      for (HalfEdge d : g_.graph().directions_at(v))
        if (d != forbidden) result = std::max(result, gain(in_image(d, 0), s2));
    } else if (s2 >= in_image_states_) {
      HalfEdge forbidden = s2 - in_image_states_;
      Vertex v = g_.graph().origin(forbidden);
      for (HalfEdge d : g_.graph().directions_at(v))
        if (d != forbidden) result = std::max(result, gain(s1, in_image(d, 0)));
    } else {
      Pos p1 = decode(s1);
      Pos p2 = decode(s2);
      HalfEdge x = g_.image(p1.e)[p1.i];
      HalfEdge y = g_.image(p2.e)[p2.i];
      if (x == y) result = len_[edge_of(x)] + gain(advance(s1), advance(s2));
    }

    on_stack_.erase(key);
    memo_[key] = result;
    return result;
  }

  const GraphMap& g_;
  const std::vector<double>& len_;
  WorkBudget& budget_;
  std::vector<int> offsets_;
  int in_image_states_ = 0;
  std::map<std::pair<int, int>, double> memo_;
  std::set<std::pair<int, int>> on_stack_;
};

}  // namespace detail

struct CancellationBound {
  enum class Method { agreement, coarse };
  double value = 0.0;
  Method method = Method::coarse;
};

// Sharp bound: supremum of image agreements over diverging tight pairs.
inline CancellationBound cancellation_bound(
    const GraphMap& g, const PFData& pf,
    CancellationBound::Method method = CancellationBound::Method::agreement,
    long long budget = default_budget()) {
  if (method == CancellationBound::Method::coarse) {
    // Volume is 1 by normalization; one application can identify at most a
    // full image overlap repeatedly folded, summing the geometric series.
    return {pf.lambda / (pf.lambda - 1.0), CancellationBound::Method::coarse};
  }
  WorkBudget wb(budget);
  detail::AgreementSearch search(g, pf.lengths, wb);
  return {search.max_over_turns(), CancellationBound::Method::agreement};
}

// One leg of an indivisible Nielsen path: an edge itinerary from the illegal
// turn, cut end_coord into its final letter (end_coord equal to the final
// edge length means the leg stops at a vertex).
struct INPLeg {
  Path letters;
  double end_coord = 0.0;
  bool ends_at_vertex = false;
  double arclength = 0.0;
};

struct INPDescriptor {
  Turn turn{0, 0};
  Vertex vertex = 0;
  INPLeg leg_a;  // side turn.a
  INPLeg leg_b;  // side turn.b
  Path gamma;
  int period = 1;
};

struct INPSearchResult {
  std::vector<INPDescriptor> inps;
  bool complete = false;
  double leg_radius = 0.0;
  double divergence = 0.0;
  int rotationless = 1;
  long long work = 0;
};

namespace detail {

// Paths cut at both ends: drop head_drop of arclength at the front and
// tail_drop at the back. Nielsen paths and their iterates live here.
struct CutPath {
  Path letters;
  double head_drop = 0.0;
  double tail_drop = 0.0;
};

inline CutPath apply_cut(const GraphMap& g, const CutPath& c,
                         const std::vector<double>& len, double lambda,
                         WorkBudget& budget) {
  CutPath out;
  for (HalfEdge e : c.letters) {
    for (HalfEdge x : g.image(e)) {
      budget.charge();
      if (!out.letters.empty() && out.letters.back() == reverse(x))
        out.letters.pop_back();
      else
        out.letters.push_back(x);
    }
  }
  out.head_drop = lambda * c.head_drop;
  out.tail_drop = lambda * c.tail_drop;
  while (!out.letters.empty() &&
         out.head_drop >= len[edge_of(out.letters.front())] - 1e-12) {
    out.head_drop -= len[edge_of(out.letters.front())];
    out.letters.erase(out.letters.begin());
  }
  while (!out.letters.empty() &&
         out.tail_drop >= len[edge_of(out.letters.back())] - 1e-12) {
    out.tail_drop -= len[edge_of(out.letters.back())];
    out.letters.pop_back();
  }
  if (out.head_drop < 1e-12) out.head_drop = 0.0;
  if (out.tail_drop < 1e-12) out.tail_drop = 0.0;
  return out;
}

inline CutPath reverse_cut(const CutPath& c) {
  return {path_reverse(c.letters), c.tail_drop, c.head_drop};
}

inline std::string cut_signature(const CutPath& c) {
  std::string sig;
  for (HalfEdge e : c.letters) sig += std::to_string(e) + ".";
  sig += "|" + std::to_string(llround(c.head_drop * 1e7));
  sig += "|" + std::to_string(llround(c.tail_drop * 1e7));
  return sig;
}

inline std::string canonical_signature(const CutPath& c) {
  return std::min(cut_signature(c), cut_signature(reverse_cut(c)));
}

inline CutPath descriptor_cut(const INPDescriptor& d,
                              const std::vector<double>& len) {
  CutPath out;
  out.letters = path_reverse(d.leg_a.letters);
  out.letters.insert(out.letters.end(), d.leg_b.letters.begin(),
                     d.leg_b.letters.end());
  out.head_drop = len[edge_of(d.leg_a.letters.back())] - d.leg_a.end_coord;
  out.tail_drop = len[edge_of(d.leg_b.letters.back())] - d.leg_b.end_coord;
  if (out.head_drop < 1e-12) out.head_drop = 0.0;
  if (out.tail_drop < 1e-12) out.tail_drop = 0.0;
  return out;
}

// A candidate endpoint germ: a fixed point of g^k together with the fixed
// germ whose eigenray sweeps back toward the turn.
struct Seed {
  bool at_vertex = false;
  Vertex vertex = 0;     // when at_vertex
  HalfEdge direction = 0;  // vertex seeds: the fixed outgoing germ
  HalfEdge edge = 0;     // interior seeds: p lies inside this half-edge
  double coord = 0.0;    // w-coordinate of p measured from origin(edge)
};

struct Passage {
  double arclength = 0.0;  // distance from the seed point
  HalfEdge arrival = 0;    // half-edge pointing into the visited vertex
};

struct Candidate {
  HalfEdge side;  // turn direction the leg starts with
  INPLeg leg;
  const Seed* seed;
};

}  // namespace detail

// Searches for indivisible periodic Nielsen paths over all periods dividing
// the rotationless power. Requires an expanding irreducible train track map
// with primitive transition matrix.
inline INPSearchResult find_inps(const GraphMap& g,
                                 long long budget = default_budget()) {
  TrainTrackReport tt = is_train_track(g);
  if (!tt.ok)
    throw TTError("Nielsen path search requires a train track map: " +
                  tt.detail);
  PFData pf = pf_analyze(transition_matrix(g));
  if (!pf.expanding()) throw TTError("Nielsen path search requires expansion");

  GateStructure gates = compute_gates(g);
  const Graph& gr = g.graph();
  const std::vector<double>& len = pf.lengths;
  const double lambda = pf.lambda;

  INPSearchResult result;
  result.rotationless = rotationless_power(g);

  // Illegal turns grouped by vertex.
  std::vector<Turn> illegal;
  for (HalfEdge a = 0; a < gr.direction_count(); ++a)
    for (HalfEdge b = a + 1; b < gr.direction_count(); ++b)
      if (gr.origin(a) == gr.origin(b) && !gates.legal(Turn(a, b)))
        illegal.emplace_back(a, b);

  WorkBudget wb(budget);
  const long long start_units = wb.remaining();

  std::map<std::string, INPDescriptor> found;  // canonical signature -> best

  try {
    detail::AgreementSearch agreement(g, len, wb);
    result.divergence = agreement.max_over_turns();
    result.leg_radius = result.divergence / (lambda - 1.0) * (1.0 + 1e-9);

    std::vector<int> periods;
    for (int k = 1; k <= result.rotationless; ++k)
      if (result.rotationless % k == 0) periods.push_back(k);

    for (int k : periods) {
      const double lambda_k = std::pow(lambda, k);
      detail::LazyIterate lazy(g, k, len, wb);

      // Derivative and vertex map of g^k.
      std::vector<HalfEdge> dk(gr.direction_count());
      for (HalfEdge d = 0; d < gr.direction_count(); ++d) {
        HalfEdge x = d;
        for (int i = 0; i < k; ++i) x = gates.dmap[x];
        dk[d] = x;
      }
      std::vector<Vertex> vk(gr.vertex_count());
      for (Vertex v = 0; v < gr.vertex_count(); ++v) {
        Vertex x = v;
        for (int i = 0; i < k; ++i) x = g.vertex_image(x);
        vk[v] = x;
      }

      // Seeds: fixed vertices with fixed germs.
      std::vector<detail::Seed> seeds;
      for (Vertex v = 0; v < gr.vertex_count(); ++v) {
        if (vk[v] != v) continue;
        for (HalfEdge d : gr.directions_at(v))
          if (dk[d] == d) {
            detail::Seed s;
            s.at_vertex = true;
            s.vertex = v;
            s.direction = d;
            seeds.push_back(s);
          }
      }

      // Seeds: interior fixed points from occurrences of w in g^k(w). An
      // occurrence beginning at arclength c pins the fixed point at
      // t = c/(lambda^k - 1); only points within the leg radius of the
      // entry end can terminate a leg.
      const double c_window = result.leg_radius * (lambda_k - 1.0);
      for (HalfEdge w = 0; w < gr.direction_count(); ++w) {
        double window = c_window * (1.0 + 1e-6) + len[edge_of(w)] + 1e-12;
        Path prefix = lazy.edge_prefix(w, window);
        double cum = 0.0;
        for (size_t idx = 0; idx < prefix.size(); ++idx) {
          if (cum > c_window * (1.0 + 1e-6)) break;
          if (prefix[idx] == w && idx > 0) {
            double t = cum / (lambda_k - 1.0);
            if (t > 1e-9 && t < len[edge_of(w)] - 1e-9) {
              detail::Seed s;
              s.at_vertex = false;
              s.edge = w;
              s.coord = t;
              seeds.push_back(s);
            }
          }
          cum += len[edge_of(prefix[idx])];
        }
      }

      // Grow the eigenray of each seed germ and read off vertex passages.
      std::vector<std::vector<detail::Passage>> passages(seeds.size());
      std::vector<std::vector<HalfEdge>> ray_letters(seeds.size());
      std::vector<double> ray_initial(seeds.size(), 0.0);
      const double target = result.leg_radius * (1.0 + 1e-9);

      for (size_t si = 0; si < seeds.size(); ++si) {
        const detail::Seed& s = seeds[si];
        if (s.at_vertex) {
          // Eigenray of a fixed direction: iterate prefixes of g^k(e_d).
          Path ray = {s.direction};
          double covered = len[edge_of(s.direction)];
          while (covered < target) {
            Path next = lazy.path_prefix(ray, target + 1e-12);
            double c2 = lazy.length_of(next);
            if (next == ray) break;  // fully stable and short (impossible
                                     // for expanding maps, defensive)
            ray = std::move(next);
            covered = c2;
          }
          ray_letters[si] = ray;
          ray_initial[si] = 0.0;
          double cum = 0.0;
          for (HalfEdge u : ray) {
            cum += len[edge_of(u)];
            if (cum > target) break;
            passages[si].push_back({cum, u});
          }
        } else {
          // Interior fixed point p at coordinate t inside w. The eigenray
          // of the backward germ is the reversed prefix of g^{kn}(w) up to
          // the image position lambda^{kn} t of p.
          double t = s.coord;
          int n = 1;
          double pos = lambda_k * t;
          while (pos < target + t && n < 64) {
            pos *= lambda_k;
            ++n;
          }
          detail::LazyIterate deep(g, k * n, len, wb);
          Path prefix = deep.edge_prefix(s.edge, pos + 1e-9);
          // Locate the letter containing the image position.
          double cum = 0.0;
          size_t at = prefix.size();
          for (size_t idx = 0; idx < prefix.size(); ++idx) {
            double l = len[edge_of(prefix[idx])];
            if (pos <= cum + l - 1e-9) {
              at = idx;
              break;
            }
            cum += l;
          }
          if (at == prefix.size() || prefix[at] != s.edge)
            throw TTError("interior fixed point drifted off its edge");
          // First passage after arclength t, then whole letters backwards.
          std::vector<HalfEdge> walked;
          passages[si].push_back({t, reverse(s.edge)});
          walked.push_back(reverse(s.edge));
          double sarc = t;
          for (size_t j = at; j-- > 0 && sarc <= target;) {
            walked.push_back(reverse(prefix[j]));
            sarc += len[edge_of(prefix[j])];
            passages[si].push_back({sarc, reverse(prefix[j])});
          }
          ray_letters[si] = walked;
          ray_initial[si] = t;
        }
      }

      // Candidate legs per illegal turn and side.
      for (const Turn& turn : illegal) {
        Vertex tv = gr.origin(turn.a);
        std::map<HalfEdge, std::vector<detail::Candidate>> by_side;
        for (size_t si = 0; si < seeds.size(); ++si) {
          for (size_t pi = 0; pi < passages[si].size(); ++pi) {
            const detail::Passage& pass = passages[si][pi];
            if (pass.arclength > target) break;
            if (gr.terminus(pass.arrival) != tv) continue;
            HalfEdge d = reverse(pass.arrival);
            if (d != turn.a && d != turn.b) continue;

            detail::Candidate cand;
            cand.side = d;
            cand.seed = &seeds[si];
            INPLeg& leg = cand.leg;
            const detail::Seed& s = seeds[si];
            // Reverse the walked prefix up to this passage.
            if (s.at_vertex) {
              for (size_t j = pi + 1; j-- > 0;)
                leg.letters.push_back(reverse(ray_letters[si][j]));
              leg.end_coord = len[edge_of(leg.letters.back())];
              leg.ends_at_vertex = true;
            } else {
              for (size_t j = pi + 1; j-- > 0;)
                leg.letters.push_back(reverse(ray_letters[si][j]));
              // Final letter is the seed edge cut at its coordinate.
              leg.end_coord = s.coord;
              leg.ends_at_vertex = false;
            }
            leg.arclength = pass.arclength;
            if (!is_tight(leg.letters)) continue;
            bool legal_leg = true;
            for (const Turn& t2 : turns_of(gr, leg.letters))
              if (!gates.legal(t2)) legal_leg = false;
            if (!legal_leg) continue;
            by_side[d].push_back(std::move(cand));
          }
        }

        // Pair sides by the gamma prefix of the image.
        auto gamma_of = [&](const detail::Candidate& cand)
            -> std::optional<Path> {
          const INPLeg& leg = cand.leg;
          Path img;
          for (size_t i = 0; i + 1 < leg.letters.size(); ++i) {
            Path full = lazy.edge_prefix(
                leg.letters[i],
                lambda_k * len[edge_of(leg.letters[i])] * (1.0 + 1e-9) +
                    1e-12);
            img.insert(img.end(), full.begin(), full.end());
          }
          double cutlen = lambda_k * leg.end_coord;
          Path tail = lazy.edge_prefix(leg.letters.back(), cutlen + 1e-9);
          double cum = 0.0;
          size_t keep = 0;
          double final_off = 0.0;
          for (size_t idx = 0; idx < tail.size(); ++idx) {
            double l = len[edge_of(tail[idx])];
            if (cutlen <= cum + l - 1e-9 || idx + 1 == tail.size()) {
              keep = idx + 1;
              final_off = cutlen - cum;
              break;
            }
            cum += l;
          }
          img.insert(img.end(), tail.begin(), tail.begin() + keep);
          // The image must end with a copy of the leg at the same offset.
          if (img.size() <= leg.letters.size()) return std::nullopt;
          size_t gl = img.size() - leg.letters.size();
          for (size_t i = 0; i < leg.letters.size(); ++i)
            if (img[gl + i] != leg.letters[i]) return std::nullopt;
          if (std::abs(final_off - leg.end_coord) > 1e-6) return std::nullopt;
          Path gamma(img.begin(), img.begin() + gl);
          if (gamma.empty() || !is_tight(gamma)) return std::nullopt;
          return gamma;
        };

        std::vector<std::pair<Path, const detail::Candidate*>> ga, gb;
        for (const auto& cand : by_side[turn.a])
          if (auto gm = gamma_of(cand)) ga.emplace_back(*gm, &cand);
        for (const auto& cand : by_side[turn.b])
          if (auto gm = gamma_of(cand)) gb.emplace_back(*gm, &cand);

        for (const auto& [gamma1, c1] : ga)
          for (const auto& [gamma2, c2] : gb) {
            if (gamma1 != gamma2) continue;
            if (std::abs(c1->leg.arclength - c2->leg.arclength) > 1e-6)
              continue;
            INPDescriptor d;
            d.turn = turn;
            d.vertex = tv;
            d.leg_a = c1->leg;
            d.leg_b = c2->leg;
            d.gamma = gamma1;
            d.period = k;
            std::string sig =
                detail::canonical_signature(detail::descriptor_cut(d, len));
            if (!found.count(sig)) found.emplace(sig, std::move(d));
          }
      }
    }

    // Group descriptors into orbits under the map action; keep the
    // signature-minimal representative of each orbit.
    std::map<std::string, std::string> orbit_rep;  // sig -> rep sig
    std::vector<std::string> sigs;
    for (const auto& [sig, d] : found) sigs.push_back(sig);
    for (const std::string& sig : sigs) {
      if (orbit_rep.count(sig)) continue;
      const INPDescriptor& d = found.at(sig);
      detail::CutPath cut = detail::descriptor_cut(d, len);
      for (int j = 0; j < d.period; ++j) {
        orbit_rep[detail::canonical_signature(cut)] = sig;
        cut = detail::apply_cut(g, cut, len, lambda, wb);
      }
    }
    std::set<std::string> reps;
    for (const std::string& sig : sigs) {
      auto it = orbit_rep.find(sig);
      reps.insert(it == orbit_rep.end() ? sig : it->second);
    }
    for (const std::string& sig : reps)
      if (found.count(sig)) result.inps.push_back(found.at(sig));
    std::sort(result.inps.begin(), result.inps.end(),
              [&](const INPDescriptor& x, const INPDescriptor& y) {
                if (x.period != y.period) return x.period < y.period;
                return detail::canonical_signature(
                           detail::descriptor_cut(x, len)) <
                       detail::canonical_signature(
                           detail::descriptor_cut(y, len));
              });
    result.complete = true;
  } catch (const BudgetExhausted&) {
    result.complete = false;
    result.inps.clear();
  }
  result.work = wb.used_since(start_units);
  return result;
}

// Re-verifies a descriptor from scratch: applies the map period times to
// the cut path and compares.
inline bool verify_inp(const GraphMap& g, const INPDescriptor& d,
                       double tol = 1e-6) {
  PFData pf = pf_analyze(transition_matrix(g));
  WorkBudget wb(default_budget());
  detail::CutPath cut = detail::descriptor_cut(d, pf.lengths);
  detail::CutPath image = cut;
  for (int j = 0; j < d.period; ++j)
    image = detail::apply_cut(g, image, pf.lengths, pf.lambda, wb);
  if (image.letters != cut.letters) return false;
  if (std::abs(image.head_drop - cut.head_drop) > tol) return false;
  if (std::abs(image.tail_drop - cut.tail_drop) > tol) return false;
  // Metric consistency: |gamma| = (lambda^k - 1) |leg|.
  double lk = std::pow(pf.lambda, d.period);
  double glen = 0.0;
  for (HalfEdge e : d.gamma) glen += pf.lengths[edge_of(e)];
  if (std::abs(glen - (lk - 1.0) * d.leg_a.arclength) > tol) return false;
  if (std::abs(d.leg_a.arclength - d.leg_b.arclength) > tol) return false;
  return true;
}

inline Verdict has_pnp(const GraphMap& g, long long budget = default_budget()) {
  INPSearchResult r = find_inps(g, budget);
  if (!r.inps.empty()) return Verdict::yes;
  return r.complete ? Verdict::no : Verdict::inconclusive;
}

}  // namespace ttcert
