/**
 * Canvas <-> engine coordinate transforms.
 *
 * The engine map is a square of side 6 centered on the origin with y up;
 * the canvas has y down. Engine coordinates are snapped to 0.01 so exported
 * files carry short stable decimals.
 */

export const MAP_HALF = 3.0;
export const MAP_SIDE = 6.0;

export interface CanvasSize {
  width: number;
  height: number;
}

export function canvasToWorld(px: number, py: number, size: CanvasSize): [number, number] {
  const x = (px / size.width) * MAP_SIDE - MAP_HALF;
  const y = MAP_HALF - (py / size.height) * MAP_SIDE;
  return [snap(x), snap(y)];
}

export function worldToCanvas(x: number, y: number, size: CanvasSize): [number, number] {
  const px = ((x + MAP_HALF) / MAP_SIDE) * size.width;
  const py = ((MAP_HALF - y) / MAP_SIDE) * size.height;
  return [px, py];
}

export function snap(value: number, grid = 0.01): number {
  return Math.round(value / grid) * grid === 0 ? 0 : round2(Math.round(value / grid) * grid);
}

function round2(value: number): number {
  return Math.round(value * 100) / 100;
}

export function clampToMap(value: number): number {
  return Math.min(MAP_HALF, Math.max(-MAP_HALF, value));
}
