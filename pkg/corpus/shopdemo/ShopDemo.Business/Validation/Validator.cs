using System;

namespace ShopDemo.Business.Validation
{
    public static class Validator
    {
        public static bool Require(string value)
        {
            return value != null;
        }

        public static bool RequirePositive(decimal value)
        {
            return value > 0;
        }
    }
}
