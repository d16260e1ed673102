import torch

import pytest

from ppm_trainer.colormlp import param_count
from ppm_trainer.losses import total_loss
from ppm_trainer.network import PpmConfig, PpmNetwork, adain


def test_head_emits_563_values_for_20_hidden_units(small_net):
    torch.manual_seed(0)
    c = torch.rand(2, 3, 64, 64)
    s = torch.rand(2, 3, 64, 64)
    theta = small_net(c, s)
    assert theta.shape == (2, 563)
    assert small_net.head.out_features == param_count(20) == 563


def test_param_count_formula():
    # N=2 by hand: W1 6 + b1 2 + W2 4 + b2 2 + W3 6 + b3 3 = 23
    assert param_count(2) == 23
    for n in (5, 10, 20, 30):
        assert param_count(n) == n * n + 8 * n + 3


def test_eval_mode_is_deterministic(small_net):
    torch.manual_seed(1)
    c = torch.rand(1, 3, 64, 64)
    s = torch.rand(1, 3, 64, 64)
    small_net.eval()
    with torch.no_grad():
        a = small_net(c, s)
        b = small_net(c, s)
    small_net.train()
    assert torch.equal(a, b)


def test_gradients_flow_to_every_trainable_weight(small_cfg):
    torch.manual_seed(2)
    net = PpmNetwork(small_cfg, try_pretrained=False)
    c = torch.rand(2, 3, 64, 64)
    s = torch.rand(2, 3, 64, 64)
    theta = net(c, s)
    loss, _ = total_loss(net.vgg, c, s, theta, small_cfg)
    loss.backward()
    grads = [p.grad for p in net.trainable_parameters()]
    assert all(g is not None for g in grads)
    assert all(torch.isfinite(g).all() for g in grads)
    assert all(g.abs().sum() > 0 for g in grads)


def test_vgg_extractor_stays_frozen(small_net):
    assert all(not p.requires_grad for p in small_net.vgg.parameters())
    small_net.train()
    assert not small_net.vgg.training  # forced eval even inside train()
    assert all(p.requires_grad for p in small_net.trainable_parameters())


def test_forward_works_across_resolutions():
    for res in (64, 96, 128):
        cfg = PpmConfig(resolution=res)
        torch.manual_seed(0)
        net = PpmNetwork(cfg, try_pretrained=False)
        theta = net(torch.rand(1, 3, res, res), torch.rand(1, 3, res, res))
        assert theta.shape == (1, 563)


def test_config_validation():
    with pytest.raises(ValueError):
        PpmConfig(resolution=100)
    with pytest.raises(ValueError):
        PpmConfig(lambda_style=-0.5)


def test_adain_matches_target_statistics():
    torch.manual_seed(3)
    content = torch.rand(2, 4, 8, 8)
    style = 2.0 * torch.rand(2, 4, 8, 8) + 1.0
    out = adain(content, style)
    assert torch.allclose(out.mean(dim=(2, 3)), style.mean(dim=(2, 3)), atol=1e-5)
    assert torch.allclose(out.std(dim=(2, 3), unbiased=False),
                          style.std(dim=(2, 3), unbiased=False), atol=1e-4)
