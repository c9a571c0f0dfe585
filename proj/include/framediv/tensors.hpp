#pragma once

#include <vector>

namespace framediv {

// Dense cubic array of size n^3, indexed (i,j,k).
class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(int n) : n_(n), data_(static_cast<size_t>(n) * n * n, 0.0) {}
    int dim() const { return n_; }
    double& operator()(int i, int j, int k) {
        return data_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
    }
    double operator()(int i, int j, int k) const {
        return data_[(static_cast<size_t>(i) * n_ + j) * n_ + k];
    }

private:
    int n_ = 0;
    std::vector<double> data_;
};

// Dense quartic array of size n^4, indexed (i,j,k,l).
class Tensor4 {
public:
    Tensor4() = default;
    explicit Tensor4(int n) : n_(n), data_(static_cast<size_t>(n) * n * n * n, 0.0) {}
    int dim() const { return n_; }
    double& operator()(int i, int j, int k, int l) {
        return data_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
    }
    double operator()(int i, int j, int k, int l) const {
        return data_[((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l];
    }

private:
    int n_ = 0;
    std::vector<double> data_;
};

} // namespace framediv
