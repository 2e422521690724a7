/**
 * Canonical level-file serialization.
 *
 * Byte-compatible with the engine's re-export (sorted keys, 2-space indent,
 * integral floats printed without a decimal point, non-ASCII escaped), so
 * export -> engine import -> re-export is byte-stable.
 */

import { EditorDocument } from "./editorDocument.js";

type JsonValue = null | boolean | number | string | JsonValue[] | { [key: string]: JsonValue };

function escapeString(value: string): string {
  let out = JSON.stringify(value);
  // match Python's ensure_ascii: escape everything outside printable ASCII
  out = out.replace(/[-￿]/g, (ch) =>
    "\\u" + ch.charCodeAt(0).toString(16).padStart(4, "0"),
  );
  return out;
}

function formatNumber(value: number): string {
  if (!Number.isFinite(value)) {
    throw new Error("non-finite number in document");
  }
  if (Number.isInteger(value) && Math.abs(value) < 1e15) {
    return String(value);
  }
  return String(value);
}

export function canonicalJson(doc: JsonValue, indent = 0): string {
  const pad = "  ".repeat(indent);
  const childPad = "  ".repeat(indent + 1);
  if (doc === null) {
    return "null";
  }
  if (typeof doc === "boolean") {
    return doc ? "true" : "false";
  }
  if (typeof doc === "number") {
    return formatNumber(doc);
  }
  if (typeof doc === "string") {
    return escapeString(doc);
  }
  if (Array.isArray(doc)) {
    if (doc.length === 0) {
      return "[]";
    }
    const parts = doc.map((v) => `${childPad}${canonicalJson(v, indent + 1)}`);
    return "[\n" + parts.join(",\n") + `\n${pad}]`;
  }
  const keys = Object.keys(doc).sort();
  if (keys.length === 0) {
    return "{}";
  }
  const parts = keys.map(
    (k) => `${childPad}${escapeString(k)}: ${canonicalJson(doc[k], indent + 1)}`,
  );
  return "{\n" + parts.join(",\n") + `\n${pad}}`;
}

/** The level file body the editor downloads and the engine imports. */
export function exportLevelFile(doc: EditorDocument): string {
  return canonicalJson(doc as unknown as JsonValue);
}

/** PNG snapshot of the map canvas, exported alongside the JSON file. */
export function exportMapImage(canvas: HTMLCanvasElement): string {
  return canvas.toDataURL("image/png");
}
