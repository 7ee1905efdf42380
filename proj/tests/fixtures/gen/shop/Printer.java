// Copyright 2026 The smellgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

package shop;

public class Printer {
    private int[] data = {3, 1, 2};

    public void main() {
        int[] result = sort(data);
        print_ary(result);
    }

    static void print_ary(int[] a) {
        for (int i = 0; i < a.length; i++) {
            System.out.print(a[i]);
        }
    }

    int[] sort(int[] values) {
        int[] copy = values.clone();
        java.util.Arrays.sort(copy);
        return copy;
    }

    int total() {
        int x = 1;
        int y = 2;
        int s = sum(x, y);
        return s;
    }

    int sum(int a, int b) {
        int x = a;
        int y = b;
        return x + y;
    }

    int twice() {
        int k = 3;
        return 2 * sum(k, k + 1);
    }

    void quiet() {
        noop();
    }

    void noop() {
    }

    int ping(int n) {
        return n <= 0 ? 0 : pong(n - 1);
    }

    int pong(int n) {
        return ping(n);
    }
}
