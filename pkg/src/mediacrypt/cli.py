"""Command-line front end.

Subcommands: encrypt, decrypt, keygen, metrics, inspect.  Exit code 0 on
success, 1 on validation errors (bad flags, bad password, corrupt cipher
values), 2 on I/O and parse errors.  Everything written to stdout is
deterministic for fixed inputs; timing goes to stderr.  The password comes
from --password or the MEDIACRYPT_PASSWORD environment variable and is never
stored, echoed, or logged.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass

from mediacrypt import metrics as metrics_mod
from mediacrypt.audio_crypt import validate_password
from mediacrypt.media_container import (
    ContainerError,
    parse_avi,
    parse_cipher_volume,
    write_avi,
    write_cipher_volume,
)
from mediacrypt.rsa_core import generate_keypair, seed_primes_from_password
from mediacrypt.video_crypt import context_from_password, decrypt_video, encrypt_video

__all__ = ["JobConfig", "run", "main"]

PASSWORD_ENV = "MEDIACRYPT_PASSWORD"


@dataclass
class JobConfig:
    """One resolved CLI invocation."""

    command: str
    input_path: str | None = None
    output_path: str | None = None
    password: str | None = None
    mode: str = "dual"
    pn_amplitude: float = 0.5
    awgn: bool = False
    snr_db: float | None = None
    json_output: bool = False
    e: int | None = None

    def __post_init__(self):
        if self.awgn and self.snr_db is None:
            raise ValueError("--awgn requires --snr")
        if not self.awgn and self.snr_db is not None:
            raise ValueError("--snr requires --awgn")
        if not 0.0 < self.pn_amplitude <= 1.0:
            raise ValueError(f"--pn-amplitude must be in (0, 1], got {self.pn_amplitude}")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the contract reserves 2 for I/O.
    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _require_password(args, enforce_policy: bool = True) -> str:
    password = args.password or os.environ.get(PASSWORD_ENV)
    if not password:
        raise ValueError(f"no password given (use --password or {PASSWORD_ENV})")
    if enforce_policy:
        violations = validate_password(password)
        if violations:
            raise ValueError("invalid password: " + "; ".join(violations))
    return password


def _read_file(path: str) -> bytes:
    with open(path, "rb") as fh:
        return fh.read()


def _write_file(path: str, data: bytes):
    with open(path, "wb") as fh:
        fh.write(data)


def _cmd_encrypt(args) -> int:
    config = JobConfig(
        command="encrypt",
        input_path=args.input,
        output_path=args.output,
        password=_require_password(args),
        mode=args.mode,
        pn_amplitude=args.pn_amplitude,
        awgn=args.awgn,
        snr_db=args.snr,
        e=args.e,
    )
    asset = parse_avi(_read_file(config.input_path))
    started = time.perf_counter()
    volume = encrypt_video(
        asset,
        config.password,
        mode=config.mode,
        e=config.e,
        pn_amplitude=config.pn_amplitude,
        awgn=config.awgn,
        snr_db=config.snr_db,
    )
    elapsed = time.perf_counter() - started
    _write_file(config.output_path, write_cipher_volume(volume))
    frames = len(volume.frames)
    print(
        f"encrypted {frames} frames in {elapsed:.3f} s ({elapsed / frames:.3f} s/frame)",
        file=sys.stderr,
    )
    return 0


def _cmd_decrypt(args) -> int:
    config = JobConfig(
        command="decrypt",
        input_path=args.input,
        output_path=args.output,
        password=_require_password(args),
        pn_amplitude=args.pn_amplitude,
        e=args.e,
    )
    volume = parse_cipher_volume(_read_file(config.input_path))
    ctx = context_from_password(config.password, volume.mode, config.e)
    if ctx.key_pair.n != volume.modulus_n:
        print(
            "warning: password does not match this volume "
            f"(derived modulus {ctx.key_pair.n}, header says {volume.modulus_n}); "
            "output will be garbage",
            file=sys.stderr,
        )
    started = time.perf_counter()
    asset = decrypt_video(volume, config.password, e=config.e, pn_amplitude=config.pn_amplitude)
    elapsed = time.perf_counter() - started
    _write_file(config.output_path, write_avi(asset))
    frames = len(asset.frames)
    print(
        f"decrypted {frames} frames in {elapsed:.3f} s ({elapsed / frames:.3f} s/frame)",
        file=sys.stderr,
    )
    return 0


def _cmd_keygen(args) -> int:
    # Inspection tool: any non-empty printable password is accepted here so
    # small demonstration seeds stay reachable; encrypt/decrypt enforce the
    # full policy.
    password = _require_password(args, enforce_policy=False)
    p, q = seed_primes_from_password(password)
    key = generate_keypair(p, q, args.e)
    for name, value in (("p", key.p), ("q", key.q), ("n", key.n), ("e", key.e), ("d", key.d)):
        print(f"{name} = {value}")
    return 0


def _cmd_metrics(args) -> int:
    original_data = _read_file(args.original)
    encrypted_data = _read_file(args.encrypted)
    decrypted_data = _read_file(args.decrypted)
    original = parse_avi(original_data)
    volume = parse_cipher_volume(encrypted_data)
    report = metrics_mod.build_report(
        original,
        volume.frames,
        volume.modulus_n,
        original_bytes=len(original_data),
        encrypted_bytes=len(encrypted_data),
        decrypted_bytes=len(decrypted_data),
        encrypt_seconds=args.encrypt_seconds,
        decrypt_seconds=args.decrypt_seconds,
    )
    if args.json:
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    else:
        print(report.render_text())
    return 0


def _inspect_fields(data: bytes) -> dict:
    if data[:4] == b"EVC1":
        v = parse_cipher_volume(data)
        return {
            "format": "EVC1",
            "mode": v.mode,
            "awgn": v.awgn,
            "width": v.width,
            "height": v.height,
            "fps": f"{v.fps[0]}/{v.fps[1]}",
            "frame_count": len(v.frames),
            "modulus_n": v.modulus_n,
            "audio_sample_count": int(v.audio.size),
            "sample_rate": v.sample_rate,
            "norm_scale": v.norm_scale,
        }
    asset = parse_avi(data)
    return {
        "format": "AVI",
        "width": asset.width,
        "height": asset.height,
        "fps": f"{asset.fps[0]}/{asset.fps[1]}",
        "frame_count": len(asset.frames),
        "audio_sample_count": 0 if asset.audio is None else int(asset.audio.samples.size),
        "sample_rate": 0 if asset.audio is None else asset.audio.sample_rate,
    }


def _cmd_inspect(args) -> int:
    fields = _inspect_fields(_read_file(args.input))
    if args.json:
        print(json.dumps(fields, indent=2, sort_keys=True))
    else:
        width = max(len(k) for k in fields)
        for key, value in fields.items():
            print(f"{key:<{width}} {value}")
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="mediacrypt", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_password(p):
        p.add_argument("--password", "-p", help=f"password (falls back to ${PASSWORD_ENV})")

    enc = sub.add_parser("encrypt", help="encrypt an AVI file into a cipher volume")
    enc.add_argument("input", help="input .avi path")
    enc.add_argument("output", help="output .evc path")
    add_password(enc)
    enc.add_argument("--mode", choices=["dual", "rsa-only"], default="dual")
    enc.add_argument("--awgn", action="store_true", help="pass encrypted audio through a noisy channel")
    enc.add_argument("--snr", type=float, default=None, help="channel SNR in dB (with --awgn)")
    enc.add_argument("--pn-amplitude", type=float, default=0.5, help="audio PN amplitude in (0, 1]")
    enc.add_argument("--e", type=int, default=None, help="explicit RSA exponent override")
    enc.set_defaults(func=_cmd_encrypt)

    dec = sub.add_parser("decrypt", help="decrypt a cipher volume back to AVI")
    dec.add_argument("input", help="input .evc path")
    dec.add_argument("output", help="output .avi path")
    add_password(dec)
    dec.add_argument("--pn-amplitude", type=float, default=0.5, help="must match encryption")
    dec.add_argument("--e", type=int, default=None, help="must match encryption if overridden")
    dec.set_defaults(func=_cmd_decrypt)

    key = sub.add_parser("keygen", help="print the key material a password derives")
    add_password(key)
    key.add_argument("--e", type=int, default=None, help="explicit RSA exponent override")
    key.set_defaults(func=_cmd_keygen)

    met = sub.add_parser("metrics", help="report ratios, speed and visual degradation")
    met.add_argument("original", help="original .avi path")
    met.add_argument("encrypted", help="encrypted .evc path")
    met.add_argument("decrypted", help="decrypted .avi path")
    met.add_argument("--encrypt-seconds", type=float, default=None)
    met.add_argument("--decrypt-seconds", type=float, default=None)
    met.add_argument("--json", action="store_true")
    met.set_defaults(func=_cmd_metrics)

    ins = sub.add_parser("inspect", help="print container header fields")
    ins.add_argument("input", help=".avi or .evc path")
    ins.add_argument("--json", action="store_true")
    ins.set_defaults(func=_cmd_inspect)

    return parser


def run(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except ContainerError as exc:
        print(f"mediacrypt: parse error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"mediacrypt: i/o error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"mediacrypt: error: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
