// Test-wallet import: a pasted hex private key stands in for a browser
// extension. Derives the checksummed address and signs server challenges
// under the personal-message envelope the node verifies.

import { keccak256, keccak256Text } from "./crypto/keccak.js";
import {
  N,
  Signature,
  bigintToBytes,
  bytesToBigint,
  publicKey,
  signDigest,
} from "./crypto/secp256k1.js";

const PERSONAL_MESSAGE_PREFIX = "\x19Ethereum Signed Message:\n";

export interface Wallet {
  privateKey: bigint;
  address: string;
}

export function toChecksumAddress(raw: Uint8Array): string {
  if (raw.length !== 20) throw new Error("address must be 20 bytes");
  const lower = bytesToHex(raw);
  const digest = bytesToHex(keccak256Text(lower));
  let out = "";
  for (let i = 0; i < lower.length; i++) {
    const c = lower[i];
    out += /[a-f]/.test(c) && parseInt(digest[i], 16) >= 8 ? c.toUpperCase() : c;
  }
  return "0x" + out;
}

export function bytesToHex(data: Uint8Array): string {
  let out = "";
  for (const byte of data) out += byte.toString(16).padStart(2, "0");
  return out;
}

export function hexToBytes(hex: string): Uint8Array {
  const body = hex.startsWith("0x") ? hex.slice(2) : hex;
  if (body.length % 2 !== 0 || /[^0-9a-fA-F]/.test(body)) {
    throw new Error("malformed hex");
  }
  const out = new Uint8Array(body.length / 2);
  for (let i = 0; i < out.length; i++) {
    out[i] = parseInt(body.slice(2 * i, 2 * i + 2), 16);
  }
  return out;
}

export function walletFromPrivateKey(hex: string): Wallet {
  const raw = hexToBytes(hex.trim());
  if (raw.length !== 32) throw new Error("private key must be 32 bytes of hex");
  const scalar = bytesToBigint(raw);
  if (scalar === 0n || scalar >= N) throw new Error("private key out of range");
  const pub = publicKey(scalar);
  const uncompressed = new Uint8Array(64);
  uncompressed.set(bigintToBytes(pub.x, 32), 0);
  uncompressed.set(bigintToBytes(pub.y, 32), 32);
  const address = toChecksumAddress(keccak256(uncompressed).slice(12));
  return { privateKey: scalar, address };
}

export function generatePrivateKeyHex(): string {
  // rejection-sample until the scalar lands in the group
  for (;;) {
    const raw = crypto.getRandomValues(new Uint8Array(32));
    const scalar = bytesToBigint(raw);
    if (scalar > 0n && scalar < N) return bytesToHex(raw);
  }
}

function personalDigest(message: Uint8Array): Uint8Array {
  const prefix = new TextEncoder().encode(
    PERSONAL_MESSAGE_PREFIX + String(message.length));
  const framed = new Uint8Array(prefix.length + message.length);
  framed.set(prefix);
  framed.set(message, prefix.length);
  return keccak256(framed);
}

function encodeSignature(sig: Signature): string {
  const out = new Uint8Array(65);
  out.set(bigintToBytes(sig.r, 32), 0);
  out.set(bigintToBytes(sig.s, 32), 32);
  out[64] = 27 + sig.recoveryId;
  return "0x" + bytesToHex(out);
}

/** Sign a challenge string; returns the 65-byte r||s||v signature as hex. */
export async function signChallenge(wallet: Wallet, challenge: string): Promise<string> {
  if (!challenge) throw new Error("challenge must be non-empty");
  const message = new TextEncoder().encode(challenge);
  const sig = await signDigest(wallet.privateKey, personalDigest(message));
  return encodeSignature(sig);
}
