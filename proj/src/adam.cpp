#include "dahgnn/adam.hpp"

#include <cmath>

namespace dahgnn {

AdamState AdamState::zeros_like(const std::vector<Matrix*>& params) {
  AdamState s;
  s.m.reserve(params.size());
  s.v.reserve(params.size());
  for (const Matrix* p : params) {
    s.m.push_back(Matrix::Zero(p->rows(), p->cols()));
    s.v.push_back(Matrix::Zero(p->rows(), p->cols()));
  }
  return s;
}

void adam_step(const std::vector<Matrix*>& params,
               const std::vector<Matrix>& grads, AdamState& state, double lr,
               const AdamConfig& cfg) {
  require(params.size() == grads.size() && params.size() == state.m.size() &&
              params.size() == state.v.size(),
          "adam_step: parameter/gradient/state counts differ");
  for (std::size_t i = 0; i < params.size(); ++i) {
    require(params[i]->rows() == grads[i].rows() &&
                params[i]->cols() == grads[i].cols() &&
                params[i]->rows() == state.m[i].rows() &&
                params[i]->cols() == state.m[i].cols(),
            "adam_step: shape mismatch at parameter " + std::to_string(i));
  }
  state.step += 1;
  const double mc = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.step));
  const double vc = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.step));
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto m = state.m[i].array();
    auto v = state.v[i].array();
    const auto g = grads[i].array();
    m = cfg.beta1 * m + (1.0 - cfg.beta1) * g;
    v = cfg.beta2 * v + (1.0 - cfg.beta2) * g.square();
    params[i]->array() -=
        lr * (m / mc) / ((v / vc).sqrt() + cfg.epsilon);
  }
}

}  // namespace dahgnn
