#include "rlap/actor.hpp"

#include "rlap/errors.hpp"

namespace rlap {

namespace {

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    throw DimensionMismatch("head has " + std::to_string(a.size()) +
                            " weights, embedding has " + std::to_string(b.size()));
  }
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

ActorModel make_actor(std::shared_ptr<EmbeddingProvider> provider) {
  if (!provider) throw Error("actor needs an embedding provider");
  ActorModel actor;
  actor.head.w.assign(provider->dimension(), 0.0);
  actor.target_head = actor.head;
  actor.provider = std::move(provider);
  return actor;
}

double q_value(const ActorModel& actor, const StateRecord& state,
               const SubtaskAction& action, HeadSelect which) {
  const std::vector<double> h = actor.provider->embed(build_scoring_sequence(action, state));
  const QHead& head = which == HeadSelect::online ? actor.head : actor.target_head;
  return dot(head.w, h) + head.b;
}

SubtaskAction select_greedy(const ActorModel& actor, const StateRecord& state,
                            const ActionSpace& space) {
  if (space.remaining.empty()) throw EmptyActionSpace("no actions left to select");
  const SubtaskAction* best = nullptr;
  double best_q = 0.0;
  for (const SubtaskAction& a : space.remaining) {
    const double q = q_value(actor, state, a, HeadSelect::online);
    if (best == nullptr || q > best_q || (q == best_q && a.action_id < best->action_id)) {
      best = &a;
      best_q = q;
    }
  }
  return *best;
}

SubtaskAction select_epsilon_greedy(const ActorModel& actor, const StateRecord& state,
                                    const ActionSpace& space, double epsilon, Rng& rng) {
  if (epsilon < 0.0 || epsilon > 1.0) {
    throw Error("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
  }
  if (space.remaining.empty()) throw EmptyActionSpace("no actions left to select");
  if (epsilon > 0.0 && uniform_real01(rng) < epsilon) {
    return space.remaining[uniform_index(rng, space.remaining.size())];
  }
  return select_greedy(actor, state, space);
}

HeadGradient head_gradient(const QHead& head, const std::vector<double>& h, double y) {
  if (head.w.size() != h.size()) {
    throw DimensionMismatch("head has " + std::to_string(head.w.size()) +
                            " weights, embedding has " + std::to_string(h.size()));
  }
  double q = head.b;
  for (std::size_t i = 0; i < h.size(); ++i) q += head.w[i] * h[i];
  const double err = y - q;

  HeadGradient g;
  g.gw.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) g.gw[i] = -2.0 * err * h[i];
  g.gb = -2.0 * err;
  g.loss = err * err;
  return g;
}

QHead sgd_update(const QHead& head, const std::vector<double>& gw, double gb,
                 double learning_rate) {
  if (head.w.size() != gw.size()) {
    throw DimensionMismatch("gradient size does not match head size");
  }
  QHead next = head;
  for (std::size_t i = 0; i < gw.size(); ++i) next.w[i] -= learning_rate * gw[i];
  next.b -= learning_rate * gb;
  return next;
}

}  // namespace rlap
